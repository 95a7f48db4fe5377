#include "commands.hpp"

#include <cmath>
#include <functional>
#include <iomanip>

#include "CLI11.hpp"
#include "config.hpp"
#include "hbo/bona_smith.hpp"
#include "hbo/error.hpp"
#include "hbo/illposed.hpp"
#include "hbo/linear_lab.hpp"
#include "hbo/norms.hpp"
#include "hbo/osc_integral.hpp"
#include "hbo/parallel.hpp"
#include "hbo/snapshot.hpp"
#include "hbo/solitary.hpp"
#include "hbo/solver.hpp"
#include "hbo/transform.hpp"
#include "manifest.hpp"

namespace hbo::cli {

namespace {

using nlohmann::json;

json grid_json(const Grid& g) {
  return {{"d", g.dim()}, {"L", g.half_length()}, {"M", g.samples()}, {"dx", g.dx()}, {"kmax", g.kmax()}};
}

// the library insists on T = n dt exactly
SolverConfig solver_config(const Config& c, double T) {
  SolverConfig s;
  s.dt = c.real("dt");
  const long n = std::lround(T / s.dt);
  if (std::abs(n * s.dt - T) > 1e-9 * std::max(1.0, T)) throw ValidationError("T = " + num(T) + " is not a multiple of dt = " + num(s.dt));
  s.T = n * s.dt;
  return s;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void cmd_decay(const Config& c, RunContext& ctx, std::ostream& log) {
  const int d = c.integer("d");
  double L = c.real("L");
  int M = c.integer("M");
  if (L == 0) L = d == 2 ? 256 : d == 3 ? 192 : 48;
  if (M == 0) M = d == 2 ? 1024 : d == 3 ? 256 : 64;
  const auto times = log_spaced(c.real("t-min"), c.real("t-max"), c.integer("t-count"));
  const std::string method = c.text("method");
  const double predicted = d == 2 ? -5.0 / 6.0 : -1.0;
  CsvTable t;
  t.header = {"method", "t", "sup"};
  for (int a = 0; a < d; ++a) t.header.push_back("x" + std::to_string(a + 1));
  auto emit = [&](const std::string& name, const DecayFit& f) {
    for (std::size_t i = 0; i < f.times.size(); ++i) {
      std::vector<std::string> row = {name, num(f.times[i]), num(f.envelope[i])};
      for (int a = 0; a < d; ++a) row.push_back(num(f.argmax.empty() ? 0.0 : f.argmax[i][a]));
      t.add(row);
    }
    ctx.results[name] = {{"fitted_exponent", f.fitted_exponent}, {"residual", f.residual}, {"boundary_hit", f.boundary_hit}};
    log << name << ": fitted exponent " << f.fitted_exponent << " (predicted " << predicted << ")\n";
  };
  if (method == "fft" || method == "both") {
    const Grid g(d, L, M);
    ctx.grid = grid_json(g);
    emit("fft", decay_envelope_experiment(g, c.integer("band"), times));
  }
  if (method == "radial" || method == "both") {
    if (c.integer("band") != 0) throw ValidationError("band: the radial sup search is implemented for band 0 only");
    emit("radial", decay_sup_fit(d, times));
  }
  ctx.results["predicted_exponent"] = predicted;
  ctx.write_csv("decay.csv", t);
}

void cmd_strichartz(const Config& c, RunContext& ctx, std::ostream& log) {
  const std::string mode = c.text("mode");
  const int d = c.integer("d");
  const double q = c.real("q"), r = c.real("r");
  const int nt = c.integer("t-samples");
  const auto tr = make_triple(q, r, d);
  ctx.results["s"] = tr.s;
  ctx.results["admissible"] = tr.admissible;
  CsvTable t;
  if (mode == "scaling") {
    double L = c.real("L"), T = c.real("T");
    int M = c.integer("M");
    if (L == 0) L = d == 2 ? 32 : 16;
    if (M == 0) M = d == 2 ? 256 : 64;
    if (T == 0) T = d == 2 ? 4 : 2;
    const Grid g(d, L, M);
    ctx.grid = grid_json(g);
    const auto F = annulus_datum(g, 0);
    t.header = {"lambda", "L", "T", "mixed", "hs", "ratio"};
    double lo = 1e300, hi = 0;
    for (double lam : c.list("lambdas")) {
      const auto G = rescale_grid_compatible(F, lam);
      const TimeWindow w{0, T / (lam * lam), nt};
      const double mixed = strichartz_mixed_norm(G, q, r, w), hs = sobolev_norm(G, tr.s, true);
      lo = std::min(lo, mixed / hs);
      hi = std::max(hi, mixed / hs);
      t.add({num(lam), num(G.grid.half_length()), num(w.t1), num(mixed), num(hs), num(mixed / hs)});
    }
    ctx.results["ratio_spread"] = hi / lo - 1;
    log << "scaling: s = " << tr.s << ", relative spread of the ratio " << hi / lo - 1 << "\n";
  } else if (mode == "knapp") {
    const auto st = knapp_study(q, r, d, c.list("R"), c.integer("n1"), nt);
    t.header = {"R", "mixed", "hs", "ratio", "tube_min"};
    for (auto& row : st.rows) t.add({num(row.R), num(row.mixed), num(row.hs), num(row.ratio), num(row.tube_min)});
    ctx.results["fitted_exponent"] = st.fitted_exponent;
    ctx.results["mixed_exponent"] = st.mixed_exponent;
    ctx.results["predicted_exponent"] = st.predicted;
    log << "knapp: fitted exponent " << st.fitted_exponent << " (predicted " << st.predicted << ")\n";
  } else {
    const auto st = degenerate_study(q, r, c.list("deltas"), c.real("c0"), nt);
    t.header = {"delta", "hs", "mixed", "center_min"};
    for (auto& row : st.rows) t.add({num(row.delta), num(row.hs), num(row.mixed), num(row.center_min)});
    ctx.results["hs_exponent"] = st.hs_exponent;
    ctx.results["hs_predicted"] = st.hs_predicted;
    ctx.results["mixed_exponent"] = st.mixed_exponent;
    ctx.results["mixed_predicted"] = st.mixed_predicted;
    log << "degenerate: hs exponent " << st.hs_exponent << " (predicted " << st.hs_predicted << "), mixed exponent "
        << st.mixed_exponent << " (predicted " << st.mixed_predicted << ")\n";
  }
  ctx.write_csv("strichartz.csv", t);
}

void cmd_smoothing(const Config& c, RunContext& ctx, std::ostream& log) {
  const int d = c.integer("d"), M = c.integer("M"), nt = c.integer("t-samples"), count = c.integer("count");
  const double L = c.real("L"), alpha = c.real("alpha"), T = c.real("T");
  const bool refine = c.flag("refine");
  const Grid g(d, L, M), g2(d, L, 2 * M);
  ctx.grid = grid_json(g);
  CsvTable t;
  t.header = {"index", "numerator", "sharp_bound", "hs_bound", "ratio", "ratio_hs"};
  if (refine) t.header.push_back("ratio_refined");
  Rng rng(static_cast<std::uint64_t>(c.integer("seed")));
  double lo = 1e300, hi = 0, hi_ref = 0;
  for (int i = 0; i < count; ++i) {
    // the packet parameters are drawn once and resampled on both grids
    Rng a = rng, b = rng;
    const auto F = random_packet_datum(g, a, c.real("k-min"), c.real("k-max"));
    rng = a;
    const auto res = local_smoothing(F, alpha, T, nt);
    lo = std::min(lo, res.ratio());
    hi = std::max(hi, res.ratio());
    std::vector<std::string> row = {num(i), num(res.numerator), num(res.sharp_bound), num(res.hs_bound), num(res.ratio()),
                                    num(res.ratio_hs())};
    if (refine) {
      const double rr = local_smoothing(random_packet_datum(g2, b, c.real("k-min"), c.real("k-max")), alpha, T, nt).ratio();
      hi_ref = std::max(hi_ref, rr);
      row.push_back(num(rr));
    }
    t.add(row);
  }
  ctx.results["ratio_min"] = lo;
  ctx.results["ratio_max"] = hi;
  ctx.results["spread"] = hi / lo;
  ctx.results["empirical_constant"] = hi;
  if (refine) ctx.results["refined_max"] = hi_ref;
  log << "smoothing: ratios in [" << lo << ", " << hi << "], spread " << hi / lo << "\n";
  ctx.write_csv("smoothing.csv", t);
}

void cmd_oscint(const Config& c, RunContext& ctx, std::ostream& log) {
  const int d = c.integer("d");
  const auto ts = c.list("t");
  const int n1 = c.integer("x1-count"), n2 = c.integer("x2-count");
  const double a0 = c.real("x1-min"), a1 = c.real("x1-max"), b1 = d >= 2 ? c.real("x2-max") : 0;
  QuadratureOptions opt;
  opt.density = c.real("density");
  double tmax = 0, xmax = std::max(std::abs(a0), std::abs(a1)) + b1;
  for (double t : ts) tmax = std::max(tmax, std::abs(t));
  // the FFT column needs an alias-free band and periodic copies of the kernel far away
  const double L = std::max(256.0, 8 * tmax + 2 * xmax);
  int M = 2 * static_cast<int>(std::ceil(2.2 * L / kPi));
  while (M % 8) M += 2;
  const bool with_fft = d == 2;
  Grid g;
  SpectralField A;
  if (with_fft) {
    g = Grid(d, L, M);
    A = annulus_datum(g, 0);
    ctx.grid = grid_json(g);
  }
  struct Pt {
    std::array<double, kMaxDim> x{};
    double t;
  };
  std::vector<Pt> pts;
  for (double t : ts)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < (d >= 2 ? n2 : 1); ++j) {
        Pt p{};
        p.t = t;
        p.x[0] = n1 > 1 ? a0 + (a1 - a0) * i / (n1 - 1) : a0;
        if (d >= 2) p.x[1] = n2 > 1 ? b1 * j / (n2 - 1) : 0;
        pts.push_back(p);
      }
  struct Val {
    cplx direct, radial, fft;
  };
  std::vector<SpectralField> props;
  if (with_fft)
    for (double t : ts) props.push_back(propagate(A, t));
  const double fft_scale = std::pow(2 * kPi, d);
  const auto vals = parallel_map<Val>(pts.size(), [&](std::size_t k) {
    const auto& p = pts[k];
    Val v;
    v.direct = osc_integral_direct(p.x.data(), d, p.t, opt);
    v.radial = osc_integral_radial(p.x.data(), d, p.t);
    if (with_fft) {
      const auto ti = static_cast<std::size_t>(std::find(ts.begin(), ts.end(), p.t) - ts.begin());
      v.fft = evaluate_at(props[ti], p.x.data()) * fft_scale;
    }
    return v;
  });
  CsvTable t;
  t.header = {"t"};
  for (int a = 0; a < std::min(d, 2); ++a) t.header.push_back("x" + std::to_string(a + 1));
  for (auto h : {"re_direct", "im_direct", "abs_direct", "abs_radial", "abs_fft", "err_fft", "err_radial"}) t.header.push_back(h);
  double efft = 0, erad = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& v = vals[k];
    const double ef = with_fft ? std::abs(v.fft - v.direct) : 0, er = std::abs(v.radial - v.direct);
    efft = std::max(efft, ef);
    erad = std::max(erad, er);
    std::vector<std::string> row = {num(pts[k].t)};
    for (int a = 0; a < std::min(d, 2); ++a) row.push_back(num(pts[k].x[a]));
    for (double x : {v.direct.real(), v.direct.imag(), std::abs(v.direct), std::abs(v.radial), std::abs(v.fft), ef, er})
      row.push_back(num(x));
    t.add(row);
  }
  ctx.results["points"] = pts.size();
  if (with_fft) ctx.results["max_abs_error_fft"] = efft;
  ctx.results["max_abs_error_radial"] = erad;
  log << "oscint: " << pts.size() << " points, max |direct - fft| " << efft << ", max |direct - radial| " << erad << "\n";
  ctx.write_csv("oscint.csv", t);
}

void cmd_evolve(const Config& c, RunContext& ctx, std::ostream& log) {
  const std::string datum = c.text("datum");
  RealField u0;
  if (datum == "file") {
    u0 = read_snapshot(c.text("input"));
  } else {
    const Grid g(c.integer("d"), c.real("L"), c.integer("M"));
    if (datum == "gaussian") u0 = gaussian_datum(g, c.real("amplitude"), c.real("width"));
    else if (datum == "tail") u0 = inverse_transform(algebraic_tail_datum(g, c.real("s"), 0.05, c.real("amplitude")));
    else u0 = RealField(g);
  }
  ctx.grid = grid_json(u0.grid);
  auto cfg = solver_config(c, c.real("T"));
  cfg.mu = c.real("mu");
  cfg.dealias = c.flag("dealias");
  cfg.nonlinear = c.flag("nonlinear");
  cfg.invariant_stride = c.integer("stride");
  cfg.monitor_s = c.real("monitor-s");
  cfg.snapshot_stride = c.integer("snapshot-stride");
  const auto tr = evolve(u0, cfg);
  CsvTable t;
  t.header = {"time", "I", "M", "H", "hs_norm", "lipschitz_integrand", "grad_inf"};
  for (auto& r : tr.records)
    t.add({num(r.time), num(r.I), num(r.M), num(r.H), num(r.hs_norm), num(r.lipschitz_integrand), num(r.grad_inf)});
  ctx.write_csv("invariants.csv", t);
  const std::string tag = ctx.run_id().substr(0, 8);
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    std::ostringstream name;
    name << "snap-" << tag << "-" << std::setw(5) << std::setfill('0') << i << ".hbof";
    write_snapshot(ctx.path(name.str()).string(), tr.snapshots[i]);
    ctx.add_output(name.str());
  }
  const std::string fin = "final-" + tag + ".hbof";
  write_snapshot(ctx.path(fin).string(), tr.final_state);
  ctx.add_output(fin);
  const auto& a = tr.records.front();
  const auto& b = tr.records.back();
  auto rel = [](double x, double y) { return x == y ? 0.0 : std::abs(y - x) / std::max(std::abs(x), 1e-300); };
  ctx.results["drift_I"] = rel(a.I, b.I);
  ctx.results["drift_M"] = rel(a.M, b.M);
  ctx.results["drift_H"] = rel(a.H, b.H);
  ctx.results["lipschitz_budget"] = tr.lipschitz_budget;
  ctx.results["energy_constant"] = tr.energy_constant;
  ctx.results["final_max_abs"] = lp_norm(tr.final_state, INFINITY);
  log << "evolve: " << tr.records.size() << " records, relative drift M " << rel(a.M, b.M) << ", H " << rel(a.H, b.H) << "\n";
}

void cmd_bona_smith(const Config& c, RunContext& ctx, std::ostream& log) {
  const Grid g(2, c.real("L"), c.integer("M"));
  ctx.grid = grid_json(g);
  const double s = c.real("s");
  const auto u0 = inverse_transform(algebraic_tail_datum(g, s, c.real("eps"), c.real("amplitude")));
  auto cfg = solver_config(c, c.real("T"));
  cfg.invariant_stride = c.integer("stride");
  cfg.monitor_s = s;
  const auto tab = bona_smith_experiment(u0, s, sorted_unique(c.list("n")), cfg);
  CsvTable t;
  t.header = {"n", "m", "alpha", "sup_diff", "init_diff", "K_n", "K_m", "aborted"};
  for (auto& r : tab.rows)
    for (std::size_t a = 0; a < tab.alphas.size(); ++a)
      t.add({num(r.n), num(r.m), num(tab.alphas[a]), num(r.aborted ? NAN : r.sup_diff[a]), num(r.aborted ? NAN : r.init_diff[a]),
             num(r.K_n), num(r.K_m), r.aborted ? "1" : "0"});
  ctx.write_csv("bona_smith.csv", t);
  json fits = json::array();
  for (std::size_t a = 0; a < tab.alphas.size(); ++a)
    fits.push_back({{"alpha", tab.alphas[a]}, {"fitted_exponent", tab.fitted_exponents[a]}, {"predicted", s - tab.alphas[a]}});
  ctx.results["fits"] = fits;
  ctx.results["u0_hs"] = tab.u0_hs;
  for (auto& r : tab.rows)
    if (r.aborted) throw NumericalAbort("bona-smith: row n = " + num(r.n) + " aborted: " + r.abort_reason);
  log << "bona-smith: H^0 difference exponent " << tab.fitted_exponents[0] << " (predicted " << s << ")\n";
}

void cmd_gronwall(const Config& c, RunContext& ctx, std::ostream& log) {
  const Grid g(2, c.real("L"), c.integer("M"));
  ctx.grid = grid_json(g);
  const auto phi1 = gaussian_datum(g, c.real("amplitude"), c.real("width"));
  Rng rng(static_cast<std::uint64_t>(c.integer("seed")));
  const auto bump = inverse_transform(random_packet_datum(g, rng, 0.5, 1.5));
  const double bmax = lp_norm(bump, INFINITY);
  RealField phi2 = phi1;
  for (std::size_t i = 0; i < phi2.values.size(); ++i) phi2.values[i] += c.real("perturbation") * bump.values[i] / bmax;
  auto cfg = solver_config(c, c.real("T"));
  cfg.invariant_stride = c.integer("stride");
  const auto rep = gronwall_uniqueness_experiment(phi1, phi2, cfg);
  CsvTable t;
  t.header = {"t", "diff", "budget"};
  for (auto& p : rep.series) t.add({num(p.t), num(p.diff), num(p.budget)});
  ctx.write_csv("gronwall.csv", t);
  ctx.results["diff0"] = rep.diff0;
  ctx.results["max_diff"] = rep.max_diff;
  ctx.results["c_empirical"] = rep.c_empirical;
  log << "gronwall: c_empirical " << rep.c_empirical << "\n";
}

void cmd_soliton(const Config& c, RunContext& ctx, std::ostream& log) {
  const Grid g(2, c.real("L"), c.integer("M"));
  ctx.grid = grid_json(g);
  PetviashviliOptions opt;
  opt.tol = c.real("tol");
  opt.max_iter = c.integer("max-iter");
  const double speed = c.real("c");
  const auto w = petviashvili_solve(speed, g, opt);
  CsvTable t;
  t.header = {"iteration", "residual", "stabilizer"};
  for (std::size_t i = 0; i < w.history.size(); ++i)
    t.add({num(i + 1), num(w.history[i]), num(i < w.stabilizer.size() ? w.stabilizer[i] : NAN)});
  ctx.write_csv("petviashvili.csv", t);
  const std::string prof = "profile-" + ctx.run_id().substr(0, 8) + ".hbof";
  write_snapshot(ctx.path(prof).string(), w.profile);
  ctx.add_output(prof);
  ctx.results["residual"] = w.residual;
  ctx.results["iterations"] = w.iterations;
  ctx.results["l2_norm"] = lp_norm(w.profile, 2);
  ctx.results["max"] = lp_norm(w.profile, INFINITY);
  ctx.results["x2_asymmetry"] = x2_asymmetry(w.profile);
  // boundary contamination: share of the mass outside |x| <= L/2
  double outer = 0, total = 0;
  const double h = g.half_length() / 2;
  for_each_x(g, [&](std::size_t i, const double* x) {
    const double m = w.profile.values[i] * w.profile.values[i];
    total += m;
    if (std::hypot(x[0], x[1]) > h) outer += m;
  });
  ctx.results["tail_mass_fraction"] = outer / total;
  log << "soliton: c = " << speed << ", residual " << w.residual << " after " << w.iterations << " iterations\n";
  if (c.flag("travel")) {
    const Grid tg(2, c.real("travel-L"), c.integer("travel-M"));
    const bool same = tg.half_length() == g.half_length() && tg.samples() == g.samples();
    const auto tw = same ? w : petviashvili_solve(speed, tg, opt);
    ctx.results["traveling_residual"] = tw.residual;
    double T = c.real("T");
    if (T == 0) T = 2 * tg.half_length() / speed;
    const auto rep = traveling_test(tw, T, solver_config(c, T));
    CsvTable tt;
    tt.header = {"t", "error"};
    for (std::size_t i = 0; i < rep.times.size(); ++i) tt.add({num(rep.times[i]), num(rep.errors[i])});
    ctx.write_csv("traveling.csv", tt);
    ctx.results["traveling_max_error"] = rep.max_error;
    ctx.results["traveling_mass_drift"] = rep.mass_drift;
    ctx.results["transit_time"] = rep.transit_time;
    log << "soliton: traveling error " << rep.max_error << " over T = " << T << "\n";
  }
}

void cmd_nonuniform(const Config& c, RunContext& ctx, std::ostream& log) {
  const Grid g(2, c.real("L"), c.integer("M"));
  ctx.grid = grid_json(g);
  PetviashviliOptions opt;
  opt.tol = c.real("tol");
  const auto ref = petviashvili_solve(1.0, Grid(2, c.real("ref-L"), c.integer("ref-M")), opt);
  const double phi1 = lp_norm(ref.profile, 2);
  const double t = c.real("t");
  auto base = solver_config(c, t);
  const auto ns = sorted_unique(c.list("n"));
  const auto reps = parallel_map<NonuniformReport>(ns.size(), [&](std::size_t i) {
    return nonuniform_continuity_demo(static_cast<int>(ns[i]), t, g, base, phi1, opt);
  });
  CsvTable tab;
  tab.header = {"n", "c1", "c2", "t", "norm_c1", "norm_c2", "init_distance", "distance_evolved", "distance_analytic", "phi1_norm"};
  for (auto& r : reps)
    tab.add({num(r.n), num(r.c1), num(r.c2), num(r.t), num(r.norm_c1), num(r.norm_c2), num(r.init_distance),
             num(r.distance_evolved), num(r.distance_analytic), num(r.phi1_norm)});
  ctx.write_csv("nonuniform.csv", tab);
  ctx.results["phi1_norm"] = phi1;
  for (auto& r : reps)
    log << "nonuniform: n = " << r.n << ", distance " << r.init_distance << " -> " << r.distance_evolved << " (phi1 norm "
        << phi1 << ")\n";
}

void cmd_illposed(const Config& c, RunContext& ctx, std::ostream& log) {
  const int d = c.integer("d");
  const double eps = c.real("eps"), s = c.real("s"), t = c.real("t");
  const bool strict = !c.flag("allow-outside");
  const auto fit = growth_fit(sorted_unique(c.list("N")), eps, s, t, d, strict);
  CsvTable tab;
  tab.header = {"N", "eps", "s", "t", "hs_norm", "norm_over_t", "predicted_exponent", "fitted_exponent", "lambda",
                "resonance_min", "resonance_max", "overlap_ratio"};
  for (auto& r : fit.rows)
    tab.add({num(r.N), num(eps), num(s), num(t), num(r.norm), num(r.norm_over_t), num(fit.predicted_exponent),
             num(fit.fitted_exponent), num(r.lambda), num(r.band.ratio_min), num(r.band.ratio_max), num(r.overlap_ratio)});
  ctx.write_csv("illposed.csv", tab);
  ctx.results["fitted_exponent"] = fit.fitted_exponent;
  ctx.results["predicted_exponent"] = fit.predicted_exponent;
  log << "illposed: fitted exponent " << fit.fitted_exponent << " (predicted " << fit.predicted_exponent << ")\n";
}

const std::map<std::string, std::function<void(const Config&, RunContext&, std::ostream&)>>& dispatch() {
  static const std::map<std::string, std::function<void(const Config&, RunContext&, std::ostream&)>> m = {
      {"decay", cmd_decay},         {"strichartz", cmd_strichartz}, {"smoothing", cmd_smoothing},
      {"oscint", cmd_oscint},       {"evolve", cmd_evolve},         {"bona-smith", cmd_bona_smith},
      {"gronwall", cmd_gronwall},   {"soliton", cmd_soliton},       {"nonuniform", cmd_nonuniform},
      {"illposed", cmd_illposed},
  };
  return m;
}

}  // namespace

CommandOutcome run_command(const std::string& command, const std::map<std::string, std::string>& params, std::ostream& log) {
  CommandOutcome out;
  auto it = dispatch().find(command);
  if (it == dispatch().end()) {
    out.exit_code = exit_validation;
    out.message = "unknown command: " + command;
    log << "error: " << out.message << "\n";
    return out;
  }
  const auto v = validate_config(command, params);
  if (!v.ok()) {
    out.exit_code = exit_validation;
    for (auto& e : v.errors) {
      log << "error: " << e.message() << "\n";
      out.message += (out.message.empty() ? "" : "; ") + e.message();
    }
    return out;
  }
  std::unique_ptr<RunContext> ctx;
  try {
    ctx = std::make_unique<RunContext>(command, v.config);
  } catch (const ValidationError& e) {
    out.exit_code = exit_validation;
    out.message = e.what();
    log << "error: " << out.message << "\n";
    return out;
  }
  out.run_dir = ctx->dir().string();
  out.run_id = ctx->run_id();
  std::string status = "ok";
  try {
    it->second(v.config, *ctx, log);
  } catch (const ValidationError& e) {
    out.exit_code = exit_validation;
    out.message = e.what();
    status = "validation_error";
  } catch (const NumericalAbort& e) {
    out.exit_code = exit_numerical;
    out.message = e.what();
    status = "numerical_abort";
  }
  if (out.exit_code != exit_ok) {
    log << "error: " << out.message << "\n";
    ctx->results["error"] = out.message;
  }
  ctx->write_manifest(status);
  out.outputs = ctx->outputs();
  out.results = ctx->results;
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the higher-dimensional Benjamin-Ono flow", "hbo-lab"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::string> config_path;
  int workers = 0;
  static const std::map<std::string, std::string> about = {
      {"decay", "sup-norm decay of the linear kernel and its fitted exponent"},
      {"strichartz", "mixed-norm scaling, Knapp and degenerate-packet studies"},
      {"smoothing", "local smoothing ratios on random wave packets"},
      {"oscint", "oscillatory integral by direct quadrature vs FFT and radial oracles"},
      {"evolve", "nonlinear evolution with invariant tracking"},
      {"bona-smith", "Cauchy differences of mollified solutions"},
      {"gronwall", "growth of the difference of two nearby solutions"},
      {"soliton", "Petviashvili solitary wave and traveling test"},
      {"nonuniform", "distance between scaled solitary waves"},
      {"illposed", "second-iterate growth for the counterexample data"},
  };
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", config_path[name], "key = value file; flags override its entries");
    sub->add_option("--workers", workers, "worker pool size (default HBO_WORKERS or all cores)");
    for (const auto& k : schema(name)) {
      auto* opt = sub->add_option_function<std::string>(
          "--" + k.name, [&flags, name, key = k.name](const std::string& v) { flags[name][key] = v; },
          k.help + " [" + k.default_value + "]");
      opt->allow_extra_args(false);
    }
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  std::map<std::string, std::string> params;
  try {
    if (!config_path[command].empty()) params = parse_kv_file(config_path[command]);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
  for (auto& kv : flags[command]) params[kv.first] = kv.second;
  if (workers > 0) set_worker_count(workers);
  const auto res = run_command(command, params, err);
  if (!res.run_dir.empty()) out << res.run_dir << "\n";
  return res.exit_code;
}

}  // namespace hbo::cli
