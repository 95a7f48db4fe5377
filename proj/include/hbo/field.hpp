#pragma once
#include <complex>
#include <vector>

#include "hbo/grid.hpp"

namespace hbo {

using cplx = std::complex<double>;

struct RealField {
  Grid grid;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const Grid& g, std::vector<double> v);
};

// complex samples in physical space (propagated Knapp / packet data)
struct ComplexField {
  Grid grid;
  std::vector<cplx> values;

  ComplexField() = default;
  explicit ComplexField(const Grid& g) : grid(g), values(g.size()) {}
  ComplexField(const Grid& g, std::vector<cplx> v);
};

// F(xi) = dx^d sum_j f(x_j) exp(-i xi.x_j), FFT ordering
struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size()) {}
  SpectralField(const Grid& g, std::vector<cplx> c);
};

}  // namespace hbo
