#pragma once
#include <array>
#include <cstddef>
#include <vector>

namespace hbo {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxDim = 4;

// Periodic box [-L,L]^d with M samples per axis.
// x_j = -L + j*dx, frequencies pi*k/L with k in [-M/2, M/2) stored in FFT order.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, double half_length, int samples);

  int dim() const { return dim_; }
  double half_length() const { return L_; }
  int samples() const { return M_; }
  std::size_t size() const { return size_; }
  double dx() const { return 2.0 * L_ / M_; }
  double dk() const { return kPi / L_; }
  double cell_volume() const;      // dx^d
  double dual_cell_volume() const; // (dk/2pi)^d, Plancherel weight
  double x(int j) const { return -L_ + j * dx(); }
  int wavenumber(int j) const { return j < M_ / 2 ? j : j - M_; }
  double k(int j) const { return wavenumber(j) * dk(); }
  double kmax() const { return (M_ / 2) * dk(); }

  // row-major, last axis fastest
  void unravel(std::size_t idx, std::array<int, kMaxDim>& j) const;
  std::size_t stride(int axis) const;

  // per-point |xi| and xi_1 tables, built on demand
  std::vector<double> xi_abs() const;
  std::vector<double> xi_axis(int axis) const;
  std::vector<double> x_axis(int axis) const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && L_ == o.L_ && M_ == o.M_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_ = 0;
  double L_ = 0;
  int M_ = 0;
  std::size_t size_ = 0;
};

// visit every lattice point in storage order with its frequency vector
template <class Fn>
void for_each_xi(const Grid& g, Fn&& fn) {
  const int d = g.dim(), M = g.samples();
  std::array<int, kMaxDim> j{};
  std::array<double, kMaxDim> xi{};
  for (int a = 0; a < d; ++a) xi[a] = g.k(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    fn(i, xi.data());
    for (int a = d - 1; a >= 0; --a) {
      if (++j[a] < M) {
        xi[a] = g.k(j[a]);
        break;
      }
      j[a] = 0;
      xi[a] = g.k(0);
    }
  }
}

// same, with physical coordinates
template <class Fn>
void for_each_x(const Grid& g, Fn&& fn) {
  const int d = g.dim(), M = g.samples();
  std::array<int, kMaxDim> j{};
  std::array<double, kMaxDim> x{};
  for (int a = 0; a < d; ++a) x[a] = g.x(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    fn(i, x.data());
    for (int a = d - 1; a >= 0; --a) {
      if (++j[a] < M) {
        x[a] = g.x(j[a]);
        break;
      }
      j[a] = 0;
      x[a] = g.x(0);
    }
  }
}

}  // namespace hbo
