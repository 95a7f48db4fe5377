#include <cmath>

#include "doctest.h"
#include "hbo/bona_smith.hpp"
#include "hbo/error.hpp"
#include "hbo/linear_lab.hpp"
#include "hbo/norms.hpp"
#include "hbo/solver.hpp"
#include "hbo/transform.hpp"

using namespace hbo;

namespace {

double max_diff(const RealField& a, const RealField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

RealField run(const RealField& u0, double dt, double T, bool nonlinear = true) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.T = T;
  cfg.nonlinear = nonlinear;
  cfg.invariant_stride = 1000000;
  return evolve(u0, cfg).final_state;
}

// smooth but anisotropic datum so the nonlinearity acts
RealField bumpy(const Grid& g) {
  RealField f(g);
  for_each_x(g, [&](std::size_t i, const double* x) {
    f.values[i] = std::exp(-(x[0] * x[0] + 2 * x[1] * x[1]) / 4) * (1 + 0.5 * std::sin(x[0]));
  });
  return f;
}

}  // namespace

TEST_CASE("nonlinear term") {
  const Grid g(2, 4.0, 32);
  RealField c(g);
  for (auto& v : c.values) v = 1.7;
  CHECK(lp_norm(nonlinear_rhs(c), INFINITY) < 1e-14);
  RealField s(g), want(g);
  for_each_x(g, [&](std::size_t i, const double* x) {
    s.values[i] = std::sin(kPi * x[0] / 4);
    want.values[i] = -(kPi / 8) * std::sin(2 * kPi * x[0] / 4);
  });
  CHECK(max_diff(nonlinear_rhs(s), want) < 1e-13);
  const auto r = nonlinear_rhs(bumpy(g));
  CHECK(std::abs(forward_transform(r).coeffs[0]) < 1e-13);
  RealField bad(g);
  bad.values[5] = NAN;
  CHECK_THROWS_AS(nonlinear_rhs(bad), NumericalAbort);
}

TEST_CASE("zero datum stays zero") {
  const Grid g(2, 8.0, 32);
  SolverConfig cfg;
  cfg.T = 0.1;
  const auto tr = evolve(RealField(g), cfg);
  CHECK(lp_norm(tr.final_state, INFINITY) == 0);
  for (auto& r : tr.records) CHECK(r.M == 0);
}

TEST_CASE("linear flow is exact") {
  const Grid g(2, 16.0, 64);
  const auto u0 = gaussian_datum(g, 1, 2);
  const auto a = run(u0, 0.01, 1.0, false);
  auto P = forward_transform(u0);
  Integrator(g, SolverConfig{}).project(P);
  const auto b = inverse_transform(propagate(P, 1.0));
  CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("integrating-factor RK4 is fourth order") {
  const Grid g(2, 16.0, 128);
  const auto u0 = bumpy(g);
  const auto ref = run(u0, 0.0125, 1);
  const double e1 = max_diff(run(u0, 0.1, 1), ref), e2 = max_diff(run(u0, 0.05, 1), ref), e3 = max_diff(run(u0, 0.025, 1), ref);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.075));
  CHECK(std::log2(e2 / e3) == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("invariants and dealiasing") {
  const Grid g(2, 16.0, 128);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1;
  cfg.invariant_stride = 50;
  Integrator integ(g, cfg);
  auto tr = evolve(gaussian_datum(g, 1, 2), cfg, [&](double, const SpectralField& U) {
    double top = 0;
    for (std::size_t i = 0; i < U.coeffs.size(); ++i)
      if (integ.mask()[i] == 0) top = std::max(top, std::abs(U.coeffs[i]));
    CHECK(top == 0);
  });
  const auto& a = tr.records.front();
  double dI = 0, dM = 0, dH = 0;
  for (auto& r : tr.records) {
    dI = std::max(dI, std::abs(r.I - a.I) / std::abs(a.I));
    dM = std::max(dM, std::abs(r.M - a.M) / a.M);
    dH = std::max(dH, std::abs(r.H - a.H) / std::abs(a.H));
  }
  CHECK(dI < 1e-8);
  CHECK(dM < 1e-8);
  CHECK(dH < 1e-6);
  for (std::size_t i = 1; i < tr.records.size(); ++i) CHECK(tr.records[i].time > tr.records[i - 1].time);
  // energy inequality with c = 5
  CHECK(tr.energy_constant <= 5);
  double hs_max = 0;
  for (auto& r : tr.records) hs_max = std::max(hs_max, r.hs_norm);
  CHECK(hs_max <= a.hs_norm * std::exp(5 * tr.grad_budget));
  CHECK(tr.lipschitz_budget > tr.grad_budget);
}

TEST_CASE("skew-adjointness of the dispersive operator") {
  const Grid g(2, 8.0, 64);
  CHECK(std::abs(skew_adjointness_residual(bumpy(g))) < 1e-14);
  CHECK(std::abs(skew_adjointness_residual(gaussian_datum(Grid(3, 6.0, 32), 1, 1.5))) < 1e-14);
}

TEST_CASE("scaling equivariance") {
  const Grid g(2, 16.0, 128);
  const auto u0 = gaussian_datum(g, 1, 2);
  const double T = 0.5, lam = 2;
  const auto u = run(u0, 1e-3, T);
  const auto ul = run(rescale_solution(u0, lam), 1e-3 / (lam * lam), T / (lam * lam));
  const auto want = rescale_solution(u, lam);
  CHECK(max_diff(ul, want) < 1e-10 * lp_norm(want, INFINITY));
}

TEST_CASE("parabolic regularization damps") {
  const Grid g(2, 16.0, 64);
  SolverConfig cfg;
  cfg.nonlinear = false;
  cfg.mu = 0.01;
  cfg.dt = 0.01;
  cfg.T = 1;
  cfg.invariant_stride = 10;
  const auto tr = evolve(gaussian_datum(g, 1, 2), cfg);
  for (std::size_t i = 1; i < tr.records.size(); ++i) CHECK(tr.records[i].M < tr.records[i - 1].M);
}

TEST_CASE("blow-up detector and bad configurations") {
  const Grid g(2, 8.0, 32);
  SolverConfig cfg;
  cfg.T = 0.1;
  cfg.invariant_stride = 1;
  cfg.blowup_factor = 0.5;
  CHECK_THROWS_AS(evolve(gaussian_datum(g, 1, 1), cfg), NumericalAbort);
  SolverConfig bad;
  bad.dt = 0.03;
  bad.T = 0.1;
  CHECK_THROWS_AS(evolve(gaussian_datum(g, 1, 1), bad), ValidationError);
  bad.dt = -1;
  CHECK_THROWS_AS(evolve(gaussian_datum(g, 1, 1), bad), ValidationError);
}

TEST_CASE("mollification") {
  const Grid g(2, 8.0, 64);
  const auto u0 = inverse_transform(algebraic_tail_datum(g, 2, 0.05, 1));
  const auto U0 = forward_transform(u0);
  SUBCASE("large n keeps band-limited data") {
    CHECK(max_diff(mollify(u0, 2 * g.kmax() * std::sqrt(2.0)), u0) < 1e-14);
  }
  SUBCASE("Sobolev norms do not increase") {
    for (double n : {1.0, 3.0, 9.0}) CHECK(sobolev_norm(mollify(U0, n), 2, false) <= sobolev_norm(U0, 2, false));
  }
  SUBCASE("commutes with translation") {
    auto shift = [&](const SpectralField& F) {
      SpectralField S(F.grid);
      const auto k1 = F.grid.xi_axis(0);
      for (std::size_t i = 0; i < S.coeffs.size(); ++i) S.coeffs[i] = F.coeffs[i] * std::polar(1.0, -1.3 * k1[i]);
      return S;
    };
    const auto a = mollify(shift(U0), 4), b = shift(mollify(U0, 4));
    double m = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    CHECK(m < 1e-15);
  }
  CHECK_THROWS_AS(mollify(U0, 0.5), ValidationError);
}

TEST_CASE("Bona-Smith table") {
  const Grid g(2, 8.0, 128);
  const auto u0 = inverse_transform(algebraic_tail_datum(g, 2, 0.05, 1));
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.1;
  cfg.invariant_stride = 20;
  SUBCASE("n = m gives a zero row") {
    const auto tab = bona_smith_experiment(u0, 2, {4}, cfg, 1);
    for (double v : tab.rows[0].sup_diff) CHECK(v == 0);
  }
  SUBCASE("differences shrink in n, top norm included") {
    const auto tab = bona_smith_experiment(u0, 2, {2, 4, 8}, cfg);
    for (std::size_t i = 1; i < tab.rows.size(); ++i)
      for (std::size_t a = 0; a < tab.alphas.size(); ++a) CHECK(tab.rows[i].sup_diff[a] < tab.rows[i - 1].sup_diff[a]);
    CHECK(tab.fitted_exponents[0] > tab.fitted_exponents[1]);
    CHECK(tab.fitted_exponents[1] > tab.fitted_exponents[2]);
  }
}

TEST_CASE("Gronwall uniqueness") {
  const Grid g(2, 16.0, 64);
  const auto phi1 = gaussian_datum(g, 1, 2);
  SolverConfig cfg;
  cfg.dt = 1e-2;
  cfg.T = 1;
  cfg.invariant_stride = 5;
  CHECK(gronwall_uniqueness_experiment(phi1, phi1, cfg).max_diff < 1e-10);
  RealField phi2 = phi1;
  for_each_x(g, [&](std::size_t i, const double* x) { phi2.values[i] += 1e-4 * std::exp(-(x[0] - 1) * (x[0] - 1) - x[1] * x[1]); });
  const auto rep = gronwall_uniqueness_experiment(phi1, phi2, cfg);
  CHECK(rep.diff0 > 0);
  CHECK(rep.c_empirical <= 2);
  CHECK(rep.holds(2));
  CHECK(rep.holds(rep.c_empirical));
}
