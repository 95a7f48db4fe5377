#include "hbo/grid.hpp"

#include <cmath>
#include <string>

#include "hbo/error.hpp"

namespace hbo {

Grid::Grid(int dim, double half_length, int samples)
    : dim_(dim), L_(half_length), M_(samples) {
  require(dim >= 1 && dim <= kMaxDim, "grid: dim must be in [1,4], got " + std::to_string(dim));
  require(std::isfinite(half_length) && half_length > 0, "grid: half_length must be positive");
  require(samples >= 2 && samples % 2 == 0, "grid: samples per axis must be even and >= 2");
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(samples);
}

double Grid::cell_volume() const { return std::pow(dx(), dim_); }

double Grid::dual_cell_volume() const { return std::pow(dk() / (2.0 * kPi), dim_); }

void Grid::unravel(std::size_t idx, std::array<int, kMaxDim>& j) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    j[a] = static_cast<int>(idx % M_);
    idx /= M_;
  }
}

std::size_t Grid::stride(int axis) const {
  std::size_t s = 1;
  for (int a = dim_ - 1; a > axis; --a) s *= M_;
  return s;
}

std::vector<double> Grid::xi_axis(int axis) const {
  std::vector<double> out(size_);
  const std::size_t st = stride(axis);
  for (std::size_t i = 0; i < size_; ++i) out[i] = k(static_cast<int>((i / st) % M_));
  return out;
}

std::vector<double> Grid::x_axis(int axis) const {
  std::vector<double> out(size_);
  const std::size_t st = stride(axis);
  for (std::size_t i = 0; i < size_; ++i) out[i] = x(static_cast<int>((i / st) % M_));
  return out;
}

std::vector<double> Grid::xi_abs() const {
  std::vector<double> out(size_, 0.0);
  for (int a = 0; a < dim_; ++a) {
    const std::size_t st = stride(a);
    for (std::size_t i = 0; i < size_; ++i) {
      double v = k(static_cast<int>((i / st) % M_));
      out[i] += v * v;
    }
  }
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

}  // namespace hbo
