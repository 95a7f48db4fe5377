#include "hbo/solitary.hpp"

#include <cmath>

#include "hbo/error.hpp"
#include "hbo/norms.hpp"
#include "hbo/transform.hpp"

namespace hbo {

namespace {

std::vector<double> mask_for(const Grid& g, bool on) {
  std::vector<double> m(g.size(), 1.0);
  if (!on) return m;
  std::array<int, kMaxDim> j{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unravel(i, j);
    for (int a = 0; a < g.dim(); ++a)
      if (3 * std::abs(g.wavenumber(j[a])) >= g.samples()) m[i] = 0;
  }
  return m;
}

// (1/2) P (phi^2)^
SpectralField half_square(const RealField& phi, const std::vector<double>& mask) {
  RealField sq(phi.grid);
  for (std::size_t i = 0; i < sq.values.size(); ++i) sq.values[i] = 0.5 * phi.values[i] * phi.values[i];
  auto S = forward_transform(sq);
  for (std::size_t i = 0; i < S.coeffs.size(); ++i) S.coeffs[i] *= mask[i];
  return S;
}

double residual_from(const SpectralField& P, const SpectralField& N, double c, const std::vector<double>& r,
                     const std::vector<double>& k1) {
  double acc = 0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += k1[i] * k1[i] * std::norm(N.coeffs[i] - (c + r[i]) * P.coeffs[i]);
  return std::sqrt(acc * P.grid.dual_cell_volume());
}

}  // namespace

double stationary_residual(const RealField& phi, double c, bool dealias) {
  const Grid& g = phi.grid;
  const auto m = mask_for(g, dealias);
  return residual_from(forward_transform(phi), half_square(phi, m), c, g.xi_abs(), g.xi_axis(0));
}

SolitaryWave petviashvili_solve(double c, const Grid& g, const PetviashviliOptions& opt) {
  require(g.dim() == 2, "petviashvili: solitary waves are computed in d = 2");
  return petviashvili_solve(c, gaussian_datum(g, 2.0 * c, 1.5 / c), opt);
}

SolitaryWave petviashvili_solve(double c, const RealField& seed, const PetviashviliOptions& opt) {
  require(c > 0, "petviashvili: speed c must be positive");
  require(opt.max_iter >= 1 && opt.tol > 0, "petviashvili: bad iteration controls");
  const Grid& g = seed.grid;
  const auto mask = mask_for(g, opt.dealias);
  const auto r = g.xi_abs();
  const auto k1 = g.xi_axis(0);
  SpectralField P = forward_transform(seed);
  for (std::size_t i = 0; i < P.coeffs.size(); ++i) P.coeffs[i] *= mask[i];
  SolitaryWave w;
  w.c = c;
  const double norm0 = l2_norm(P);
  for (int it = 0; it < opt.max_iter; ++it) {
    const auto phi = inverse_transform(P);
    const auto N = half_square(phi, mask);
    double lin = 0, non = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      lin += (c + r[i]) * std::norm(P.coeffs[i]);
      non += (std::conj(P.coeffs[i]) * N.coeffs[i]).real();
    }
    if (!(lin > 0) || !(std::abs(non) > 1e-300) || !std::isfinite(non))
      throw NumericalAbort("petviashvili: iterate collapsed to zero (degenerate stabilizing factor)");
    const double res = residual_from(P, N, c, r, k1);
    w.history.push_back(res);
    w.iterations = it + 1;
    if (res < opt.tol) {
      w.profile = phi;
      w.residual = res;
      break;
    }
    const double S = lin / non;
    w.stabilizer.push_back(S);
    const double f = std::pow(S, opt.gamma);
    for (std::size_t i = 0; i < r.size(); ++i) P.coeffs[i] = f * N.coeffs[i] / (c + r[i]);
    const double nrm = l2_norm(P);
    if (!(nrm > 1e-12 * norm0)) throw NumericalAbort("petviashvili: iterate collapsed to zero");
    if (it + 1 == opt.max_iter)
      throw NumericalAbort("petviashvili: no convergence within " + std::to_string(opt.max_iter) +
                           " iterations, residual " + std::to_string(res));
  }
  const std::size_t skip = w.history.size() / 5;
  // allow round-off wiggles at the floor
  for (std::size_t i = skip + 1; i < w.history.size(); ++i)
    if (w.history[i] > w.history[i - 1] * 1.05 && w.history[i] > 1e3 * opt.tol) w.monotone_tail = false;
  return w;
}

RealField translate_x1(const RealField& f, double shift) {
  auto F = forward_transform(f);
  const auto k1 = f.grid.xi_axis(0);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= std::polar(1.0, -k1[i] * shift);
  return inverse_transform(F);
}

double x2_asymmetry(const RealField& f) {
  const Grid& g = f.grid;
  const int M = g.samples();
  double d = 0, m = 0;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const double v = f.values[a * M + b], w = f.values[a * M + (M - b) % M];
      d = std::max(d, std::abs(v - w));
      m = std::max(m, std::abs(v));
    }
  return m > 0 ? d / m : 0;
}

TravelingReport traveling_test(const SolitaryWave& w, double T, const SolverConfig& cfg_in) {
  require(T > 0, "traveling_test: T must be positive");
  SolverConfig cfg = cfg_in;
  cfg.T = T;
  TravelingReport rep;
  rep.transit_time = 2 * w.profile.grid.half_length() / w.c;
  const auto P = forward_transform(w.profile);
  const double nrm = l2_norm(P);
  const auto k1 = w.profile.grid.xi_axis(0);
  auto tr = evolve(w.profile, cfg, [&](double t, const SpectralField& U) {
    double acc = 0;
    for (std::size_t i = 0; i < k1.size(); ++i) acc += std::norm(U.coeffs[i] - P.coeffs[i] * std::polar(1.0, -k1[i] * w.c * t));
    const double e = std::sqrt(acc * U.grid.dual_cell_volume()) / nrm;
    rep.times.push_back(t);
    rep.errors.push_back(e);
    rep.max_error = std::max(rep.max_error, e);
  });
  const double M0 = tr.records.front().M;
  for (auto& r : tr.records) rep.mass_drift = std::max(rep.mass_drift, std::abs(r.M - M0) / M0);
  return rep;
}

NonuniformReport nonuniform_continuity_demo(int n, double t, const Grid& g, const SolverConfig& cfg_in,
                                            double phi1_norm, const PetviashviliOptions& opt) {
  require(n >= 1, "nonuniform: n must be >= 1");
  require(t >= 0, "nonuniform: t must be nonnegative");
  NonuniformReport rep;
  rep.n = n;
  rep.t = t;
  rep.c1 = n + 1;
  rep.c2 = n;
  rep.phi1_norm = phi1_norm;
  const auto w1 = petviashvili_solve(rep.c1, g, opt);
  const auto w2 = petviashvili_solve(rep.c2, g, opt);
  // resolution: spectral tail above 5e-2 of the peak beyond 0.55 kmax means the wave is not resolved
  for (const auto* w : {&w1, &w2}) {
    const auto F = forward_transform(w->profile);
    const auto r = g.xi_abs();
    double edge = 0, peak = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      peak = std::max(peak, std::abs(F.coeffs[i]));
      if (r[i] > 0.55 * g.kmax()) edge = std::max(edge, std::abs(F.coeffs[i]));
    }
    if (edge > 5e-2 * peak) throw ValidationError("nonuniform: wave with c = " + std::to_string(w->c) + " is not resolved on the grid");
  }
  rep.norm_c1 = lp_norm(w1.profile, 2);
  rep.norm_c2 = lp_norm(w2.profile, 2);
  auto dist = [](const RealField& a, const RealField& b) {
    RealField d(a.grid);
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
    return lp_norm(d, 2);
  };
  rep.init_distance = dist(w1.profile, w2.profile);
  const auto a1 = translate_x1(w1.profile, rep.c1 * t), a2 = translate_x1(w2.profile, rep.c2 * t);
  rep.distance_analytic = dist(a1, a2);
  rep.inner_analytic = inner_product(a1, a2);
  if (t == 0) {
    rep.distance_evolved = rep.init_distance;
    rep.inner_evolved = inner_product(w1.profile, w2.profile);
    return rep;
  }
  SolverConfig cfg = cfg_in;
  cfg.T = t;
  cfg.invariant_stride = std::max(1, static_cast<int>(std::lround(t / cfg.dt)));
  const auto pr = evolve_pair(w1.profile, w2.profile, cfg, {});
  rep.distance_evolved = dist(pr.a.final_state, pr.b.final_state);
  rep.inner_evolved = inner_product(pr.a.final_state, pr.b.final_state);
  return rep;
}

}  // namespace hbo
