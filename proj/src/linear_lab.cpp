#include "hbo/linear_lab.hpp"

#include <cmath>
#include <limits>

#include "hbo/error.hpp"
#include "hbo/fit.hpp"
#include "hbo/multiplier.hpp"
#include "hbo/norms.hpp"
#include "hbo/osc_integral.hpp"
#include "hbo/transform.hpp"

namespace hbo {

StrichartzTriple make_triple(double q, double r, int d) {
  require(q >= 2, "strichartz: q must be >= 2 (got " + std::to_string(q) + ")");
  require(r > 0, "strichartz: r must be positive");
  require(d >= 2, "strichartz: d must be >= 2");
  StrichartzTriple t{q, r, d};
  const double iq = std::isinf(q) ? 0 : 1 / q, ir = std::isinf(r) ? 0 : 1 / r;
  t.s = d * (0.5 - iq) - 2 * ir;
  t.admissible = d >= 3 ? (2 * iq + 2 * ir <= 1) : (10 * iq + 12 * ir <= 5);
  return t;
}

std::vector<double> log_spaced(double a, double b, int n) {
  require(a > 0 && b > a && n >= 2, "log_spaced: need 0 < a < b and n >= 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  return t;
}

DecayFit make_decay_fit(std::vector<double> times, std::vector<double> env) {
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "decay fit: times must be strictly increasing");
  DecayFit f;
  for (double e : env)
    if (!(e > 1e-13)) throw NumericalAbort("decay fit: envelope below noise floor, window unusable");
  const auto lf = fit_power_law(times, env);
  f.times = std::move(times);
  f.envelope = std::move(env);
  f.fitted_exponent = lf.slope;
  f.residual = lf.residual;
  return f;
}

RealField propagate(const RealField& f, double t) {
  return inverse_transform(apply_multiplier(forward_transform(f), MultiplierSpec::propagator(t)));
}

SpectralField propagate(const SpectralField& F, double t) {
  return apply_multiplier(F, MultiplierSpec::propagator(t));
}

SpectralField annulus_datum(const Grid& g, int band) {
  SpectralField F(g);
  const int d = g.dim();
  for_each_xi(g, [&](std::size_t i, const double* xi) {
    double r = 0;
    for (int a = 0; a < d; ++a) r += xi[a] * xi[a];
    F.coeffs[i] = psi(std::ldexp(std::sqrt(r), -band));
  });
  return F;
}

DecayFit decay_envelope_experiment(const Grid& g, int band, const std::vector<double>& times) {
  require(!times.empty(), "decay: empty time list");
  require(std::ldexp(2.0, band) <= g.kmax(), "decay: annulus exceeds the grid's frequency range");
  const auto F = annulus_datum(g, band);
  std::vector<double> env(times.size());
  std::vector<std::array<double, kMaxDim>> loc(times.size());
  // sequential: one full-size field at a time keeps 3d runs inside memory
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto u = inverse_transform_complex(propagate(F, times[k]));
    std::size_t best = 0;
    double m = -1;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      const double a = std::norm(u.values[i]);
      if (a > m) {
        m = a;
        best = i;
      }
    }
    env[k] = std::sqrt(m);
    std::array<int, kMaxDim> j{};
    g.unravel(best, j);
    loc[k] = {};
    for (int a = 0; a < g.dim(); ++a) loc[k][a] = g.x(j[a]);
  }
  auto fit = make_decay_fit(times, env);
  fit.argmax = loc;
  return fit;
}

double strichartz_mixed_norm(const SpectralField& F, double q, double r, const TimeWindow& w) {
  require(w.samples >= 1, "strichartz: need at least one time sample");
  const std::vector<double> sp = parallel_map<double>(w.samples, [&](std::size_t i) {
    return lp_norm(inverse_transform_complex(propagate(F, w.at(static_cast<int>(i)))), q);
  });
  return time_norm(sp, w.dt(), r);
}

double strichartz_ratio(const SpectralField& F, const StrichartzTriple& tr, const TimeWindow& w) {
  const double hs = sobolev_norm(F, tr.s, true);
  if (!(hs > 0)) throw ValidationError("strichartz: zero homogeneous Sobolev norm");
  return strichartz_mixed_norm(F, tr.q, tr.r, w) / hs;
}

SpectralField rescale_grid_compatible(const SpectralField& F, double lambda) {
  require(lambda > 0, "rescale: lambda must be positive");
  const Grid& g = F.grid;
  Grid h(g.dim(), g.half_length() / lambda, g.samples());
  // same samples, spacing dx/lambda: coefficients pick up lambda^{-d}
  SpectralField out(h, F.coeffs);
  const double c = std::pow(lambda, -g.dim());
  for (auto& v : out.coeffs) v *= c;
  return out;
}

Grid knapp_grid(double R, int d, int n1, double pad) {
  require(R >= 4, "knapp: R must be >= 4");
  require(n1 >= 2, "knapp: need >= 2 lattice cells across the slab");
  const double nr = n1 * R;
  require(std::abs(nr - std::round(nr)) < 1e-9, "knapp: n1*R must be an integer");
  int M = 2 * static_cast<int>(std::ceil(nr * pad));
  return Grid(d, kPi * nr, M);
}

SpectralField knapp_datum(const Grid& g, double R) {
  require(R >= 4, "knapp: R must be >= 4");
  const double dk = g.dk();
  const double n1 = 1.0 / (R * dk), nbox = 1.0 / dk;
  require(n1 >= 2 - 1e-9 && std::abs(n1 - std::round(n1)) < 1e-6 && std::abs(nbox - std::round(nbox)) < 1e-6,
          "knapp: grid does not resolve the slab width 1/R on lattice points");
  require(g.kmax() > 1.0, "knapp: grid frequency range does not cover [0,1]");
  SpectralField F(g);
  const int d = g.dim();
  const double tol = 1e-9 * dk;
  for_each_xi(g, [&](std::size_t i, const double* xi) {
    double w = 1;
    for (int a = 0; a < d && w != 0; ++a) {
      const double hi = a == 0 ? 1.0 / R : 1.0;
      if (xi[a] < -tol || xi[a] > hi + tol) w = 0;
      else if (std::abs(xi[a]) < tol || std::abs(xi[a] - hi) < tol) w *= 0.5;
    }
    F.coeffs[i] = w;
  });
  return F;
}

KnappStudy knapp_study(double q, double r, int d, const std::vector<double>& Rs, int n1, int time_samples) {
  KnappStudy st;
  st.triple = make_triple(q, r, d);
  st.predicted = 1 / q + 1 / r - 0.5;
  std::vector<double> R, ratio, mixed;
  for (double Rv : Rs) {
    const Grid g = knapp_grid(Rv, d, n1);
    const auto F = knapp_datum(g, Rv);
    const TimeWindow w{0.0, Rv / (2.0 * d), time_samples};
    KnappRow row;
    row.R = Rv;
    row.hs = sobolev_norm(F, st.triple.s, true);
    std::vector<double> sp(w.samples);
    double tube = std::numeric_limits<double>::infinity();
    // tube |x_1| <= R/2d, |x_j| <= 1/2d sampled on lattice points
    for (int k = 0; k < w.samples; ++k) {
      const auto u = inverse_transform_complex(propagate(F, w.at(k)));
      sp[k] = lp_norm(u, q);
      std::array<int, kMaxDim> j{};
      for (std::size_t i = 0; i < g.size(); ++i) {
        g.unravel(i, j);
        bool in = std::abs(g.x(j[0])) <= Rv / (2.0 * d);
        for (int a = 1; a < d && in; ++a) in = std::abs(g.x(j[a])) <= 1.0 / (2.0 * d);
        if (in) tube = std::min(tube, std::abs(u.values[i]));
      }
    }
    row.mixed = time_norm(sp, w.dt(), r);
    row.ratio = row.mixed / row.hs;
    row.tube_min = tube * Rv;
    st.rows.push_back(row);
    R.push_back(Rv);
    ratio.push_back(row.ratio);
    mixed.push_back(row.mixed);
  }
  st.fitted_exponent = fit_power_law(R, ratio).slope;
  st.mixed_exponent = fit_power_law(R, mixed).slope;
  return st;
}

std::array<double, 2> default_zeta() {
  const double s = 2.0 / std::sqrt(3.0);
  return {s, s * std::sqrt(2.0)};
}

static int fft_friendly(int n) {
  for (int m = n + (n & 1);; m += 2) {
    int v = m;
    for (int p : {2, 3, 5}) while (v % p == 0) v /= p;
    if (v == 1) return m;
  }
}

Grid degenerate_grid(double delta, const std::array<double, 2>& zeta, double points_per_width) {
  require(delta > 0 && delta <= 1.0 / 16 + 1e-15, "degenerate: delta must be in (0, 1/16]");
  // lattice spacing resolves the thin width delta^{1/2}
  const double L = points_per_width * kPi / std::sqrt(delta);
  const double reach = std::max(std::abs(zeta[0]), std::abs(zeta[1])) + std::cbrt(delta) + 0.3;
  const int M = fft_friendly(2 * static_cast<int>(std::ceil(reach * L / kPi)));
  return Grid(2, L, M);
}

SpectralField degenerate_datum_2d(const Grid& g, double delta, const std::array<double, 2>& zeta) {
  require(g.dim() == 2, "degenerate: d must be 2");
  require(delta > 0 && delta <= 1.0 / 16 + 1e-15, "degenerate: delta must be in (0, 1/16]");
  const auto geo = phase_geometry_at(zeta, delta);
  const double s1 = std::sqrt(delta), s2 = std::cbrt(delta);
  require(g.dk() <= s1 / 2, "degenerate: lattice does not resolve the packet width");
  require(g.kmax() > std::max(std::abs(zeta[0]), std::abs(zeta[1])) + s2, "degenerate: packet exceeds frequency range");
  SpectralField F(g);
  for_each_xi(g, [&](std::size_t i, const double* xi) {
    const double e0 = xi[0] - zeta[0], e1 = xi[1] - zeta[1];
    // y = D^{-1} A^T (xi - zeta)
    double y[2] = {(geo.A[0][0] * e0 + geo.A[1][0] * e1) / s1, (geo.A[0][1] * e0 + geo.A[1][1] * e1) / s2};
    F.coeffs[i] = unit_ball_bump(y, 2);
  });
  return F;
}

DegenerateStudy degenerate_study(double q, double r, const std::vector<double>& deltas, double c0, int time_samples) {
  DegenerateStudy st;
  st.q = q;
  st.r = r;
  st.s = make_triple(q, r, 2).s;
  st.mixed_predicted = 5.0 / 6.0 * (1 - 1 / q) - 1 / r;
  const auto zeta = default_zeta();
  const auto grad = sigma_gradient(zeta.data());
  std::vector<double> ds, hs, mx;
  for (double delta : deltas) {
    const Grid g = degenerate_grid(delta, zeta);
    const auto F = degenerate_datum_2d(g, delta, zeta);
    const TimeWindow w{0.0, c0 / delta, time_samples};
    DegenerateRow row;
    row.delta = delta;
    row.hs = sobolev_norm(F, st.s, true);
    std::vector<double> sp(w.samples);
    double cmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < w.samples; ++k) {
      const double t = w.at(k);
      const auto Ft = propagate(F, t);
      sp[k] = lp_norm(inverse_transform_complex(Ft), q);
      const double xc[2] = {-grad[0] * t, -grad[1] * t};
      cmin = std::min(cmin, std::abs(evaluate_at(Ft, xc)) / std::pow(delta, 5.0 / 6.0));
    }
    row.mixed = time_norm(sp, w.dt(), r);
    row.center_min = cmin;
    st.rows.push_back(row);
    ds.push_back(delta);
    hs.push_back(row.hs);
    mx.push_back(row.mixed);
  }
  st.hs_exponent = fit_power_law(ds, hs).slope;
  st.mixed_exponent = fit_power_law(ds, mx).slope;
  return st;
}

SmoothingResult local_smoothing(const SpectralField& F, double alpha, double T, int time_samples) {
  require(alpha > 0.5, "local smoothing: alpha must be > 1/2");
  require(T > 0 && time_samples >= 2, "local smoothing: need T > 0 and >= 2 time samples");
  const Grid& g = F.grid;
  const int d = g.dim();
  SmoothingResult res;
  double sharp = 0, hs = 0;
  for_each_xi(g, [&](std::size_t i, const double* xi) {
    double r2 = 0;
    for (int a = 0; a < d; ++a) r2 += xi[a] * xi[a];
    if (r2 == 0) return;
    const double a2 = std::norm(F.coeffs[i]);
    const double r = std::sqrt(r2);
    sharp += a2 * r / (r2 + xi[0] * xi[0]);
    hs += a2 / r;
  });
  res.sharp_bound = sharp * g.dual_cell_volume();
  res.hs_bound = hs * g.dual_cell_volume();
  if (!(res.sharp_bound > 0)) throw ValidationError("local smoothing: zero denominator");
  std::vector<double> wx(g.size());
  for_each_x(g, [&](std::size_t i, const double* x) {
    double r2 = 0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    wx[i] = std::pow(1 + r2, -alpha);
  });
  const TimeWindow w{-T, T, time_samples};
  const auto sp = parallel_map<double>(w.samples, [&](std::size_t k) {
    const auto u = inverse_transform_complex(propagate(F, w.at(static_cast<int>(k))));
    double acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += std::norm(u.values[i]) * wx[i];
    return acc * g.cell_volume();
  });
  double acc = 0;
  for (int k = 0; k < w.samples; ++k) acc += (k == 0 || k + 1 == w.samples ? 0.5 : 1.0) * sp[k];
  res.numerator = acc * w.dt();
  return res;
}

double local_smoothing_ratio(const SpectralField& F, double alpha, double T, int time_samples) {
  return local_smoothing(F, alpha, T, time_samples).ratio();
}

SpectralField random_packet_datum(const Grid& g, Rng& rng, double kmin, double kmax) {
  const int d = g.dim();
  const int npk = 3;
  struct P {
    std::array<double, kMaxDim> k{}, x0{};
    double width, amp, phase;
  };
  std::vector<P> ps(npk);
  for (auto& p : ps) {
    double n = 0;
    for (int a = 0; a < d; ++a) {
      p.k[a] = rng.normal();
      n += p.k[a] * p.k[a];
    }
    const double kr = rng.uniform(kmin, kmax) / std::sqrt(n);
    for (int a = 0; a < d; ++a) {
      p.k[a] *= kr;
      p.x0[a] = rng.uniform(-4.0, 4.0);
    }
    p.width = rng.uniform(0.2, 0.5);
    p.amp = rng.uniform(0.5, 1.5);
    p.phase = rng.uniform(0.0, 2 * kPi);
  }
  require(kmax + 8 * 0.5 < g.kmax(), "random packets: grid frequency range too small");
  SpectralField F(g);
  for_each_xi(g, [&](std::size_t i, const double* xi) {
    cplx v = 0;
    for (auto& p : ps) {
      double dp = 0, dm = 0, ph = 0;
      for (int a = 0; a < d; ++a) {
        dp += (xi[a] - p.k[a]) * (xi[a] - p.k[a]);
        dm += (xi[a] + p.k[a]) * (xi[a] + p.k[a]);
        ph += xi[a] * p.x0[a];
      }
      const double s2 = 2 * p.width * p.width;
      // Hermitian pair at +-k gives a real field
      v += p.amp * std::exp(-ph * cplx(0, 1)) *
           (std::exp(-dp / s2) * std::polar(1.0, p.phase) + std::exp(-dm / s2) * std::polar(1.0, -p.phase));
    }
    F.coeffs[i] = v;
  });
  F.coeffs[0] = 0;
  return F;
}

}  // namespace hbo
