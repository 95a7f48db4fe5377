#include "hbo/multiplier.hpp"

#include <cmath>

#include "hbo/error.hpp"

namespace hbo {

namespace {

double norm_of(const double* xi, int d) {
  double s = 0;
  for (int a = 0; a < d; ++a) s += xi[a] * xi[a];
  return std::sqrt(s);
}

// exp(1 - 1/(1-s^2)) on |s|<1 in the variable s = log2(rho)
double log_bump(double rho) {
  if (rho <= 0) return 0;
  const double s = std::log2(rho);
  if (std::abs(s) >= 1) return 0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

// smooth step 0 -> 1 on [0,1]
double smooth_step(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

double psi(double rho) {
  if (!(rho > 0.5 && rho < 2.0)) return 0;
  const double b0 = log_bump(rho);
  return b0 / (b0 + log_bump(0.5 * rho) + log_bump(2.0 * rho));
}

double unit_ball_bump(const double* y, int d) {
  double r2 = 0;
  for (int a = 0; a < d; ++a) r2 += y[a] * y[a];
  if (r2 >= 1) return 0;
  return std::exp(-1.0 / (1.0 - r2));
}

double rho_cutoff(double r) { return 1.0 - smooth_step(2.0 * r - 1.0); }

cplx symbol(const MultiplierSpec& m, const double* xi, int d) {
  const double r = norm_of(xi, d);
  switch (m.kind) {
    case MultiplierKind::riesz1:
      return r > 0 ? cplx(0, -xi[0] / r) : cplx(0);
    case MultiplierKind::frac_laplacian:
      if (r == 0) return m.order > 0 ? 0.0 : (m.order == 0 ? 1.0 : 0.0);
      return std::pow(r, 2 * m.order);
    case MultiplierKind::bessel:
      return std::pow(1 + r * r, 0.5 * m.order);
    case MultiplierKind::propagator:
      return std::polar(1.0, m.time * xi[0] * r);
    case MultiplierKind::littlewood_paley:
      return psi(std::ldexp(r, -m.band));
    case MultiplierKind::derivative_x1:
      return cplx(0, xi[0]);
  }
  return 0;
}

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m) {
  require(F.coeffs.size() == F.grid.size(), "apply_multiplier: coefficient count does not match grid");
  require(std::isfinite(m.order) && std::isfinite(m.time), "apply_multiplier: non-finite parameter");
  SpectralField out(F.grid);
  const int d = F.grid.dim();
  for_each_xi(F.grid, [&](std::size_t i, const double* xi) { out.coeffs[i] = F.coeffs[i] * symbol(m, xi, d); });
  return out;
}

SpectralField littlewood_paley_project(const SpectralField& F, int k) {
  return apply_multiplier(F, MultiplierSpec::littlewood_paley(k));
}

}  // namespace hbo
