#include <cmath>

#include "doctest.h"
#include "hbo/error.hpp"
#include "hbo/fit.hpp"
#include "hbo/linear_lab.hpp"
#include "hbo/multiplier.hpp"
#include "hbo/osc_integral.hpp"
#include "hbo/parallel.hpp"
#include "hbo/transform.hpp"

using namespace hbo;

TEST_CASE("oscillatory integral at the origin is the mass of psi") {
  const double x[2] = {0, 0};
  const cplx v = osc_integral_direct(x, 2, 0);
  // 2 pi int psi(rho) rho d rho by a fine midpoint rule
  double m = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double r = 0.5 + 1.5 * (i + 0.5) / n;
    m += psi(r) * r;
  }
  m *= 2 * kPi * 1.5 / n;
  CHECK(v.real() == doctest::Approx(m).epsilon(1e-8));
  CHECK(std::abs(v.imag()) < 1e-12);
  CHECK(std::abs(osc_integral_radial(x, 2, 0) - v) < 1e-8);
}

TEST_CASE("conjugate symmetry and quadrature convergence") {
  const double x[2] = {-3.2, 1.1}, mx[2] = {3.2, -1.1};
  const cplx a = osc_integral_direct(x, 2, 2.5), b = osc_integral_direct(mx, 2, -2.5);
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
  QuadratureOptions fine;
  fine.density = 20;
  fine.max_spacing = 0.0025;
  CHECK(std::abs(osc_integral_direct(x, 2, 2.5, fine) - a) < 1e-8);
  CHECK(std::abs(osc_integral_radial(x, 2, 2.5) - a) < 1e-8);
  QuadratureOptions tiny;
  tiny.node_budget = 100;
  CHECK_THROWS_AS(osc_integral_direct(x, 2, 2.5, tiny), NumericalAbort);
}

TEST_CASE("direct quadrature agrees with the FFT propagator") {
  // aliased copies of the kernel sit 2L away; psi is only Gevrey smooth, so L must be large
  const Grid g(2, 256.0, 360);
  const auto A = annulus_datum(g, 0);
  double worst = 0;
  for (double t : {1.0, 4.0}) {
    const auto P = propagate(A, t);
    for (double x1 : {-6.0, -2.0, 0.0})
      for (double x2 : {0.0, 1.5}) {
        const double x[2] = {x1, x2};
        const cplx fft = evaluate_at(P, x) * (4 * kPi * kPi);
        worst = std::max(worst, std::abs(fft - osc_integral_direct(x, 2, t)));
      }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("three-dimensional radial evaluation matches the tensor quadrature") {
  const double x[3] = {-2.0, 0.7, -0.4};
  QuadratureOptions opt;
  opt.max_spacing = 0.01;
  CHECK(std::abs(osc_integral_radial(x, 3, 1.5) - osc_integral_direct(x, 3, 1.5, opt)) < 1e-6);
}

TEST_CASE("Hessian of the phase") {
  const double z[2] = {1, std::sqrt(2.0)};
  CHECK(std::abs(hessian_sigma(z).det) < 1e-15);
  const double e[2] = {1, 0};
  CHECK(hessian_sigma(e).det == doctest::Approx(2.0));
  CHECK_THROWS_AS(hessian_sigma(std::array<double, 2>{0, 0}.data()), ValidationError);
  Rng rng(17);
  double err = 0, derr = 0;
  for (int i = 0; i < 20; ++i) {
    double xi[2] = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto h = hessian_sigma(xi);
    const double step = 1e-4;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        auto at = [&](double sa, double sb) {
          double p[2] = {xi[0], xi[1]};
          p[a] += sa;
          p[b] += sb;
          return sigma_phase(p);
        };
        const double fd = (at(step, step) - at(step, -step) - at(-step, step) + at(-step, -step)) / (4 * step * step);
        err = std::max(err, std::abs(fd - h.H[a][b]));
      }
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    derr = std::max(derr, std::abs(h.det - (2 * xi[0] * xi[0] - xi[1] * xi[1]) / r2));
    derr = std::max(derr, std::abs(h.det - (h.H[0][0] * h.H[1][1] - h.H[0][1] * h.H[1][0])));
    // gradient by central differences
    const auto gr = sigma_gradient(xi);
    for (int a = 0; a < 2; ++a) {
      double p[2] = {xi[0], xi[1]}, m[2] = {xi[0], xi[1]};
      p[a] += 1e-6;
      m[a] -= 1e-6;
      err = std::max(err, std::abs((sigma_phase(p) - sigma_phase(m)) / 2e-6 - gr[a]));
    }
  }
  CHECK(err < 1e-6);
  CHECK(derr < 1e-12);
}

TEST_CASE("phase geometry at degenerate points") {
  const auto g = phase_geometry_at({1, std::sqrt(2.0)}, 0.01);
  CHECK(g.lambda_hess == doctest::Approx(9.0).epsilon(1e-15));
  for (const std::array<double, 2>& z :
       std::vector<std::array<double, 2>>{{1, std::sqrt(2.0)}, default_zeta(), {-0.5, std::sqrt(0.5)}, {0.3, -0.3 * std::sqrt(2.0)}}) {
    const auto p = phase_geometry_at(z, 0.01);
    const auto h = hessian_sigma(z.data());
    CHECK(p.lambda_hess == doctest::Approx(3 * z[0] * (z[0] * z[0] + z[1] * z[1])));
    double e = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double ata = 0, aha = 0;
        for (int k = 0; k < 2; ++k) {
          ata += p.A[k][a] * p.A[k][b];
          for (int l = 0; l < 2; ++l) aha += p.A[k][a] * h.H[k][l] * p.A[l][b];
        }
        e = std::max(e, std::abs(ata - (a == b)));
        const double want = a == 0 && b == 0 ? p.hessian_eigenvalue : 0;
        e = std::max(e, std::abs(aha - want));
      }
    CHECK(e < 1e-10);
  }
  CHECK(g.D[0] == doctest::Approx(0.1));
  CHECK(g.D[1] == doctest::Approx(std::cbrt(0.01)));
  CHECK_THROWS_AS(phase_geometry_at({1, 1}, 0.01), ValidationError);
  CHECK_THROWS_AS(phase_geometry_at({1, std::sqrt(2.0)}, 0), ValidationError);
}

TEST_CASE("Taylor remainder is first order in delta") {
  const auto z = default_zeta();
  std::vector<double> ds, es;
  for (double d : {1.0 / 16, 1.0 / 64, 1.0 / 256, 1.0 / 1024}) {
    ds.push_back(d);
    es.push_back(taylor_remainder_max(phase_geometry_at(z, d)));
  }
  CHECK(fit_power_law(ds, es).slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sup of the kernel sits on the ray |x_1| ~ |t|") {
  const auto fit = decay_sup_fit(2, log_spaced(16, 64, 3));
  for (std::size_t i = 0; i < fit.times.size(); ++i) {
    const double a = std::abs(fit.argmax[i][0]) / fit.times[i];
    CHECK(a >= 0.25);
    CHECK(a <= 4.0);
  }
  CHECK_FALSE(fit.boundary_hit);
}
