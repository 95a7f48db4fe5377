#include "hbo/bona_smith.hpp"

#include <cmath>

#include "hbo/error.hpp"
#include "hbo/fit.hpp"
#include "hbo/multiplier.hpp"
#include "hbo/norms.hpp"
#include "hbo/parallel.hpp"
#include "hbo/transform.hpp"

namespace hbo {

SpectralField mollify(const SpectralField& U, double n) {
  require(n >= 1, "mollify: n must be >= 1");
  SpectralField out(U.grid);
  const auto r = U.grid.xi_abs();
  for (std::size_t i = 0; i < r.size(); ++i) out.coeffs[i] = U.coeffs[i] * rho_cutoff(r[i] / n);
  return out;
}

RealField mollify(const RealField& u0, double n) { return inverse_transform(mollify(forward_transform(u0), n)); }

SpectralField algebraic_tail_datum(const Grid& g, double s, double eps, double amplitude) {
  require(eps > 0, "tail datum: eps must be positive");
  const double gamma = s + 0.5 * g.dim() + eps;
  SpectralField F(g);
  const int M = g.samples(), d = g.dim();
  std::array<int, kMaxDim> j{};
  const auto r = g.xi_abs();
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unravel(i, j);
    bool keep = true;
    for (int a = 0; a < d; ++a) keep = keep && 3 * std::abs(g.wavenumber(j[a])) < M;
    if (!keep || r[i] == 0) continue;
    F.coeffs[i] = amplitude * std::pow(r[i], -gamma) * (1.0 - rho_cutoff(r[i]));
  }
  return F;
}

namespace {

double diff_norm(const SpectralField& a, const SpectralField& b, double alpha) {
  SpectralField d(a.grid);
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) d.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return sobolev_norm(d, alpha, false);
}

}  // namespace

BonaSmithTable bona_smith_experiment(const RealField& u0, double s, const std::vector<double>& n_list,
                                     const SolverConfig& cfg, double m_factor) {
  require(!n_list.empty(), "bona_smith: empty n list");
  require(m_factor >= 1, "bona_smith: m_factor must be >= 1");
  BonaSmithTable tab;
  tab.s = s;
  tab.alphas = {0.0, 0.5 * s, s};
  const auto U0 = forward_transform(u0);
  tab.u0_hs = sobolev_norm(U0, s, false);
  tab.rows = parallel_map<BonaSmithRow>(n_list.size(), [&](std::size_t k) {
    BonaSmithRow row;
    row.n = n_list[k];
    row.m = m_factor * row.n;
    const std::size_t na = tab.alphas.size();
    row.sup_diff.assign(na, 0.0);
    row.init_diff.assign(na, 0.0);
    const auto un = inverse_transform(mollify(U0, row.n));
    const auto um = inverse_transform(mollify(U0, row.m));
    try {
      auto tr = evolve_pair(un, um, cfg, [&](double t, const SpectralField& a, const SpectralField& b) {
        for (std::size_t q = 0; q < na; ++q) {
          const double v = diff_norm(a, b, tab.alphas[q]);
          row.sup_diff[q] = std::max(row.sup_diff[q], v);
          if (t == 0) row.init_diff[q] = v;
        }
      });
      row.K_n = tr.a.lipschitz_budget;
      row.K_m = tr.b.lipschitz_budget;
    } catch (const NumericalAbort& e) {
      row.aborted = true;
      row.abort_reason = e.what();
    }
    return row;
  });
  for (std::size_t q = 0; q < tab.alphas.size(); ++q) {
    std::vector<double> x, y;
    for (auto& r : tab.rows)
      if (!r.aborted && r.sup_diff[q] > 0) {
        x.push_back(r.n);
        y.push_back(r.sup_diff[q]);
      }
    tab.fitted_exponents.push_back(x.size() >= 2 ? -fit_power_law(x, y).slope : NAN);
  }
  return tab;
}

bool GronwallReport::holds(double c) const {
  for (auto& p : series)
    if (p.diff > diff0 * std::exp(c * p.budget) * (1 + 1e-12) + 1e-300) return false;
  return true;
}

GronwallReport gronwall_uniqueness_experiment(const RealField& phi1, const RealField& phi2, const SolverConfig& cfg) {
  GronwallReport rep;
  const double t_unset = -1;
  double t_prev = t_unset, g_prev = 0, budget = 0;
  evolve_pair(phi1, phi2, cfg, [&](double t, const SpectralField& a, const SpectralField& b) {
    const auto ra = measure(a, t, 0), rb = measure(b, t, 0);
    const double g = ra.grad_inf + rb.grad_inf;
    if (t_prev != t_unset) budget += 0.5 * (t - t_prev) * (g + g_prev);
    t_prev = t;
    g_prev = g;
    GronwallPoint p;
    p.t = t;
    p.diff = diff_norm(a, b, 0);
    p.budget = budget;
    rep.series.push_back(p);
  });
  rep.diff0 = rep.series.front().diff;
  for (auto& p : rep.series) {
    rep.max_diff = std::max(rep.max_diff, p.diff);
    if (rep.diff0 > 0 && p.budget > 0 && p.diff > rep.diff0)
      rep.c_empirical = std::max(rep.c_empirical, std::log(p.diff / rep.diff0) / p.budget);
  }
  return rep;
}

}  // namespace hbo
