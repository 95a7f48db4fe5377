#include "hbo/transform.hpp"

#include <cmath>

#include "hbo/error.hpp"
#include "hbo/fft.hpp"

namespace hbo {

RealField::RealField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require(values.size() == g.size(), "field: value count does not match grid");
}

ComplexField::ComplexField(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  require(values.size() == g.size(), "field: value count does not match grid");
}

SpectralField::SpectralField(const Grid& g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
  require(coeffs.size() == g.size(), "spectrum: coefficient count does not match grid");
}

namespace {

// x_0 = -L contributes exp(i pi k) = (-1)^k per axis
void checkerboard(const Grid& g, std::vector<cplx>& a, double scale) {
  const std::size_t n = a.size();
  const std::size_t M = g.samples();
  const int d = g.dim();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t par = 0, q = i;
    for (int ax = 0; ax < d; ++ax) {
      par += q;
      q /= M;
    }
    a[i] *= (par & 1) ? -scale : scale;
  }
}

SpectralField forward_impl(const Grid& g, std::vector<cplx> a) {
  fft::execute(g, a.data(), -1);
  checkerboard(g, a, g.cell_volume());
  return SpectralField(g, std::move(a));
}

std::vector<cplx> inverse_impl(const SpectralField& F) {
  const Grid& g = F.grid;
  require(F.coeffs.size() == g.size(), "inverse_transform: coefficient count does not match grid");
  std::vector<cplx> a = F.coeffs;
  checkerboard(g, a, g.dual_cell_volume());
  fft::execute(g, a.data(), +1);
  return a;
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  require(f.values.size() == f.grid.size(), "forward_transform: value count does not match grid");
  std::vector<cplx> a(f.values.begin(), f.values.end());
  return forward_impl(f.grid, std::move(a));
}

SpectralField forward_transform(const ComplexField& f) {
  require(f.values.size() == f.grid.size(), "forward_transform: value count does not match grid");
  return forward_impl(f.grid, f.values);
}

RealField inverse_transform(const SpectralField& F) {
  auto a = inverse_impl(F);
  RealField out(F.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a[i].real();
  return out;
}

ComplexField inverse_transform_complex(const SpectralField& F) {
  return ComplexField(F.grid, inverse_impl(F));
}

double imaginary_residue(const SpectralField& F) {
  auto a = inverse_impl(F);
  double im = 0, mx = 0;
  for (auto& v : a) {
    im = std::max(im, std::abs(v.imag()));
    mx = std::max(mx, std::abs(v));
  }
  return mx > 0 ? im / mx : 0.0;
}

cplx evaluate_at(const SpectralField& F, const double* x) {
  const Grid& g = F.grid;
  const int d = g.dim();
  const int M = g.samples();
  // separable phase tables per axis
  std::vector<std::vector<cplx>> ph(d, std::vector<cplx>(M));
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < M; ++j) ph[a][j] = std::polar(1.0, g.k(j) * x[a]);
  cplx sum = 0;
  std::array<int, kMaxDim> j{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx c = F.coeffs[i];
    if (c == cplx(0)) continue;
    g.unravel(i, j);
    cplx p = ph[0][j[0]];
    for (int a = 1; a < d; ++a) p *= ph[a][j[a]];
    sum += c * p;
  }
  return sum * g.dual_cell_volume();
}

}  // namespace hbo
