#include "hbo/solver.hpp"

#include <cmath>
#include <limits>

#include "hbo/error.hpp"
#include "hbo/norms.hpp"
#include "hbo/transform.hpp"

namespace hbo {

namespace {

std::vector<double> dealias_mask(const Grid& g, bool on) {
  std::vector<double> m(g.size(), 1.0);
  if (!on) return m;
  const int M = g.samples(), d = g.dim();
  std::array<int, kMaxDim> j{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unravel(i, j);
    for (int a = 0; a < d; ++a)
      if (3 * std::abs(g.wavenumber(j[a])) >= M) {
        m[i] = 0;
        break;
      }
  }
  return m;
}

void check_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw NumericalAbort("solver: non-finite value in the solution");
}

}  // namespace

RealField nonlinear_rhs(const RealField& u, bool dealias) {
  check_finite(u.values);
  const Grid& g = u.grid;
  RealField sq(g);
  for (std::size_t i = 0; i < g.size(); ++i) sq.values[i] = u.values[i] * u.values[i];
  auto S = forward_transform(sq);
  const auto m = dealias_mask(g, dealias);
  const auto k1 = g.xi_axis(0);
  for (std::size_t i = 0; i < g.size(); ++i) S.coeffs[i] *= cplx(0, -0.5 * k1[i]) * m[i];
  return inverse_transform(S);
}

Integrator::Integrator(const Grid& g, const SolverConfig& cfg) : g_(g), cfg_(cfg) {
  require(cfg.dt > 0 && std::isfinite(cfg.dt), "solver: dt must be positive");
  require(cfg.T >= 0, "solver: T must be nonnegative");
  require(cfg.mu >= 0, "solver: mu must be nonnegative");
  require(cfg.invariant_stride >= 1, "solver: invariant_stride must be >= 1");
  mask_ = dealias_mask(g, cfg.dealias);
  xi1_ = g.xi_axis(0);
  const auto r = g.xi_abs();
  lin_.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) lin_[i] = cplx(-cfg.mu * r[i] * r[i], xi1_[i] * r[i]);
}

void Integrator::prepare(double dt) const {
  if (dt == cached_dt_) return;
  e_half_.resize(lin_.size());
  e_full_.resize(lin_.size());
  for (std::size_t i = 0; i < lin_.size(); ++i) {
    e_half_[i] = std::exp(lin_[i] * (0.5 * dt));
    e_full_[i] = e_half_[i] * e_half_[i];
  }
  cached_dt_ = dt;
}

void Integrator::project(SpectralField& u) const {
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] *= mask_[i];
}

SpectralField Integrator::rhs(const SpectralField& u) const {
  SpectralField out(g_);
  if (!cfg_.nonlinear) return out;
  auto w = inverse_transform(u);
  for (auto& v : w.values) {
    if (!std::isfinite(v)) throw NumericalAbort("solver: non-finite value in the solution");
    v = v * v;
  }
  auto S = forward_transform(w);
  for (std::size_t i = 0; i < g_.size(); ++i) out.coeffs[i] = S.coeffs[i] * cplx(0, -0.5 * xi1_[i]) * mask_[i];
  return out;
}

void Integrator::step(SpectralField& u) const { step(u, cfg_.dt); }

void Integrator::step(SpectralField& u, double dt) const {
  prepare(dt);
  const std::size_t n = g_.size();
  const auto& E = e_half_;
  const auto& E2 = e_full_;
  if (!cfg_.nonlinear) {
    for (std::size_t i = 0; i < n; ++i) u.coeffs[i] *= E2[i];
    return;
  }
  SpectralField tmp(g_);
  const auto k1 = rhs(u);
  for (std::size_t i = 0; i < n; ++i) tmp.coeffs[i] = E[i] * (u.coeffs[i] + 0.5 * dt * k1.coeffs[i]);
  const auto k2 = rhs(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp.coeffs[i] = E[i] * u.coeffs[i] + 0.5 * dt * k2.coeffs[i];
  const auto k3 = rhs(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp.coeffs[i] = E2[i] * u.coeffs[i] + dt * E[i] * k3.coeffs[i];
  const auto k4 = rhs(tmp);
  for (std::size_t i = 0; i < n; ++i)
    u.coeffs[i] = E2[i] * u.coeffs[i] +
                  dt / 6.0 * (E2[i] * k1.coeffs[i] + 2.0 * E[i] * (k2.coeffs[i] + k3.coeffs[i]) + k4.coeffs[i]);
}

InvariantRecord measure(const SpectralField& U, double t, double s) {
  const Grid& g = U.grid;
  InvariantRecord rec;
  rec.time = t;
  rec.I = U.coeffs[0].real();
  const auto r = g.xi_abs();
  double m = 0, h2 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a2 = std::norm(U.coeffs[i]);
    m += a2;
    h2 += r[i] * a2;
  }
  rec.M = m * g.dual_cell_volume();
  const auto u = inverse_transform(U);
  double cub = 0, uinf = 0;
  for (double v : u.values) {
    cub += v * v * v;
    uinf = std::max(uinf, std::abs(v));
  }
  rec.H = h2 * g.dual_cell_volume() - cub * g.cell_volume() / 3.0;
  rec.hs_norm = sobolev_norm(U, s, false);
  std::vector<double> g2(g.size(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const auto ka = g.xi_axis(a);
    SpectralField D(g);
    for (std::size_t i = 0; i < g.size(); ++i) D.coeffs[i] = U.coeffs[i] * cplx(0, ka[i]);
    const auto da = inverse_transform(D);
    for (std::size_t i = 0; i < g.size(); ++i) g2[i] += da.values[i] * da.values[i];
  }
  double ginf = 0;
  for (double v : g2) ginf = std::max(ginf, v);
  rec.grad_inf = std::sqrt(ginf);
  rec.lipschitz_integrand = uinf + rec.grad_inf;
  return rec;
}

namespace {

struct Runner {
  const Integrator& integ;
  SpectralField U;
  Trajectory tr;
  double hs0 = 0;
  double t = 0;
  double log_ratio_max = 0;

  Runner(const Integrator& in, const RealField& u0) : integ(in), U(forward_transform(u0)) {
    integ.project(U);
  }

  void record(bool snapshot) {
    const auto& cfg = integ.config();
    auto rec = measure(U, t, cfg.monitor_s);
    if (!std::isfinite(rec.hs_norm)) throw NumericalAbort("solver: non-finite norm at t = " + std::to_string(t));
    if (tr.records.empty()) hs0 = rec.hs_norm;
    if (hs0 > 0 && rec.hs_norm > cfg.blowup_factor * hs0)
      throw NumericalAbort("solver: blow-up detected at t = " + std::to_string(t) + ", H^s norm " +
                           std::to_string(rec.hs_norm) + " exceeds " + std::to_string(cfg.blowup_factor) +
                           " times its initial value " + std::to_string(hs0));
    if (!tr.records.empty()) {
      const auto& p = tr.records.back();
      tr.lipschitz_budget += 0.5 * (rec.time - p.time) * (rec.lipschitz_integrand + p.lipschitz_integrand);
      tr.grad_budget += 0.5 * (rec.time - p.time) * (rec.grad_inf + p.grad_inf);
      if (hs0 > 0 && rec.hs_norm > hs0 && tr.grad_budget > 0)
        tr.energy_constant = std::max(tr.energy_constant, std::log(rec.hs_norm / hs0) / tr.grad_budget);
    }
    tr.records.push_back(rec);
    if (snapshot) {
      tr.snapshot_times.push_back(t);
      tr.snapshots.push_back(inverse_transform(U));
    }
  }
};

long step_count(const SolverConfig& cfg) {
  const double n = cfg.T / cfg.dt;
  long k = std::lround(n);
  require(std::abs(n - k) < 1e-9 * std::max(1.0, n), "solver: T must be an integer multiple of dt");
  return k;
}

}  // namespace

Trajectory evolve(const RealField& u0, const SolverConfig& cfg, const Observer& obs) {
  check_finite(u0.values);
  Integrator integ(u0.grid, cfg);
  Runner run(integ, u0);
  const long n = step_count(cfg);
  const bool snaps = cfg.snapshot_stride > 0;
  run.record(snaps);
  if (obs) obs(0.0, run.U);
  for (long k = 1; k <= n; ++k) {
    integ.step(run.U);
    run.t = k * cfg.dt;
    const bool rec = k % cfg.invariant_stride == 0 || k == n;
    if (rec) {
      run.record(snaps && (k % cfg.snapshot_stride == 0 || k == n));
      if (obs) obs(run.t, run.U);
    }
  }
  run.tr.final_state = inverse_transform(run.U);
  return std::move(run.tr);
}

PairTrajectory evolve_pair(const RealField& u1, const RealField& u2, const SolverConfig& cfg, const PairObserver& obs) {
  require(u1.grid == u2.grid, "evolve_pair: grid mismatch");
  check_finite(u1.values);
  check_finite(u2.values);
  Integrator integ(u1.grid, cfg);
  Runner a(integ, u1), b(integ, u2);
  const long n = step_count(cfg);
  a.record(false);
  b.record(false);
  if (obs) obs(0.0, a.U, b.U);
  for (long k = 1; k <= n; ++k) {
    integ.step(a.U);
    integ.step(b.U);
    a.t = b.t = k * cfg.dt;
    if (k % cfg.invariant_stride == 0 || k == n) {
      a.record(false);
      b.record(false);
      if (obs) obs(a.t, a.U, b.U);
    }
  }
  a.tr.final_state = inverse_transform(a.U);
  b.tr.final_state = inverse_transform(b.U);
  return {std::move(a.tr), std::move(b.tr)};
}

double skew_adjointness_residual(const RealField& u) {
  const Grid& g = u.grid;
  const auto U = forward_transform(u);
  SpectralField L(g);
  const auto r = g.xi_abs();
  const auto k1 = g.xi_axis(0);
  for (std::size_t i = 0; i < g.size(); ++i) L.coeffs[i] = U.coeffs[i] * cplx(0, k1[i] * r[i]);
  const auto Lu = inverse_transform(L);
  const double num = inner_product(Lu, u);
  const double den = std::sqrt(inner_product(Lu, Lu) * inner_product(u, u));
  return den > 0 ? num / den : 0.0;
}

RealField rescale_solution(const RealField& u, double lambda) {
  require(lambda > 0, "rescale: lambda must be positive");
  Grid h(u.grid.dim(), u.grid.half_length() / lambda, u.grid.samples());
  RealField out(h, u.values);
  for (auto& v : out.values) v *= lambda;
  return out;
}

RealField gaussian_datum(const Grid& g, double amplitude, double width) {
  RealField f(g);
  const int d = g.dim();
  for_each_x(g, [&](std::size_t i, const double* x) {
    double r2 = 0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    f.values[i] = amplitude * std::exp(-r2 / (width * width));
  });
  return f;
}

}  // namespace hbo
