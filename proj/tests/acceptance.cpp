// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "hbo/error.hpp"
#include "hbo/linear_lab.hpp"
#include "hbo/norms.hpp"
#include "hbo/osc_integral.hpp"
#include "hbo/parallel.hpp"
#include "hbo/solitary.hpp"
#include "hbo/solver.hpp"
#include "hbo/transform.hpp"

using namespace hbo;
using namespace hbo::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path root = fs::absolute("acceptance_runs");
int failures = 0;
std::ostringstream devnull;

struct Line {
  bool pass;
  std::string text;
};

void report(int id, const std::string& name, const Line& l, double seconds) {
  if (!l.pass) ++failures;
  std::printf("%s  %2d  %-28s %s  (%.0fs)\n", l.pass ? "PASS" : "FAIL", id, name.c_str(), l.text.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

CommandOutcome run(const std::string& cmd, std::map<std::string, std::string> p, const fs::path& out = root) {
  p["out"] = out.string();
  auto o = run_command(cmd, p, devnull);
  if (o.exit_code != exit_ok) throw std::runtime_error(cmd + " exited with " + std::to_string(o.exit_code) + ": " + o.message);
  return o;
}

double num_at(const json& j, const std::string& k) { return j.at(k).get<double>(); }

bool within(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

Line c1_decay() {
  const auto a = run("decay", {{"d", "2"}, {"M", "1024"}, {"L", "256"}});
  const auto b = run("decay", {{"d", "3"}, {"M", "256"}, {"L", "192"}});
  const double e2 = num_at(a.results["fft"], "fitted_exponent"), e3 = num_at(b.results["fft"], "fitted_exponent");
  const bool ok = std::abs(e2 + 5.0 / 6) <= 0.08 && std::abs(e3 + 1) <= 0.10;
  return {ok, fmt("d=2: %.4f (target -0.8333 +- 0.08, 1024^2); d=3: %.4f (target -1 +- 0.10, 256^3)", e2, e3)};
}

Line c2_oracle() {
  const auto o = run("oscint", {});
  const double e = num_at(o.results, "max_abs_error_fft");
  const int n = o.results["points"].get<int>();
  return {n == 100 && e < 1e-6, fmt("max |direct - fft| = %.2e over %d (x,t) points (tol 1e-6)", e, n)};
}

Line c3_strichartz() {
  const auto a = run("strichartz", {{"d", "3"}, {"q", "4"}, {"r", "4"}, {"lambdas", "1,2,4"}});
  const auto b = run("strichartz", {{"d", "2"}, {"q", "6"}, {"r", "6"}, {"lambdas", "1,2,4"}});
  const auto k = run("strichartz", {{"mode", "knapp"}, {"d", "2"}, {"q", "4"}, {"r", "3"}, {"R", "16,32,64,128,256"}});
  const double sa = num_at(a.results, "ratio_spread"), sb = num_at(b.results, "ratio_spread");
  const double fe = num_at(k.results, "fitted_exponent"), pe = num_at(k.results, "predicted_exponent");
  const bool ok = sa < 0.01 && sb < 0.01 && within(fe, pe, 0.15);
  return {ok, fmt("spread (4,4) d=3: %.1e, (6,6) d=2: %.1e (tol 1%%); Knapp (4,3) d=2 exponent %.4f vs %.4f (tol 15%%)", sa, sb,
                  fe, pe)};
}

Line c4_degenerate() {
  const auto o = run("strichartz", {{"mode", "degenerate"}, {"d", "2"}, {"q", "4"}, {"r", "4"},
                                    {"deltas", "0.0625,0.03125,0.015625,0.0078125,0.00390625"}});
  const double h = num_at(o.results, "hs_exponent"), hp = num_at(o.results, "hs_predicted");
  const double m = num_at(o.results, "mixed_exponent"), mp = num_at(o.results, "mixed_predicted");
  const bool ok = within(h, hp, 0.10) && within(m, mp, 0.10);
  return {ok, fmt("H^s exponent %.4f vs %.4f, mixed (4,4) exponent %.4f vs %.4f (tol 10%%)", h, hp, m, mp)};
}

Line c5_smoothing() {
  const auto o = run("smoothing", {{"count", "20"}, {"alpha", "1"}, {"refine", "true"}});
  const double spread = num_at(o.results, "spread"), c = num_at(o.results, "empirical_constant"),
               r = num_at(o.results, "refined_max");
  const bool ok = spread < 10 && r <= c * (1 + 1e-6);
  return {ok, fmt("spread max/min %.3f (tol 10); empirical constant %.6f, max after doubling M %.6f", spread, c, r)};
}

Line c6_conservation() {
  const auto o = run("evolve", {{"datum", "gaussian"}, {"M", "128"}, {"L", "16"}, {"dt", "0.001"}, {"T", "1"}});
  const double dI = num_at(o.results, "drift_I"), dM = num_at(o.results, "drift_M"), dH = num_at(o.results, "drift_H");
  // self-convergence against a fine reference
  const Grid g(2, 16.0, 128);
  const auto u0 = gaussian_datum(g, 1, 2);
  auto fin = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.T = 1;
    cfg.invariant_stride = 1 << 30;
    return evolve(u0, cfg).final_state;
  };
  const auto ref = fin(0.00625);
  auto err = [&](double dt) {
    const auto u = fin(dt);
    double m = 0;
    for (std::size_t i = 0; i < u.values.size(); ++i) m = std::max(m, std::abs(u.values[i] - ref.values[i]));
    return m;
  };
  const double order = std::log2(err(0.1) / err(0.05));
  const bool ok = dI < 1e-8 && dM < 1e-8 && dH < 1e-6 && std::abs(order - 4) <= 0.3;
  return {ok, fmt("drift I %.1e, M %.1e (tol 1e-8), H %.1e (tol 1e-6); order %.3f (4 +- 0.3)", dI, dM, dH, order)};
}

Line c7_hessian() {
  Rng rng(7);
  double fd = 0, det = 0, eig = 0;
  for (int i = 0; i < 50; ++i) {
    double xi[2] = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto h = hessian_sigma(xi);
    const double e = 1e-4;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        auto at = [&](double sa, double sb) {
          double p[2] = {xi[0], xi[1]};
          p[a] += sa;
          p[b] += sb;
          return sigma_phase(p);
        };
        fd = std::max(fd, std::abs((at(e, e) - at(e, -e) - at(-e, e) + at(-e, -e)) / (4 * e * e) - h.H[a][b]));
      }
    const double h00 = h.H[0][0], h11 = h.H[1][1], h01 = h.H[0][1];
    det = std::max(det, std::abs(h.det - (h00 * h11 - h01 * h01)));
    det = std::max(det, std::abs(h.det - (2 * xi[0] * xi[0] - xi[1] * xi[1]) / (xi[0] * xi[0] + xi[1] * xi[1])));
  }
  for (double z1 : {1.0, 0.4, -0.7, 1.9}) {
    const std::array<double, 2> z = {z1, std::sqrt(2.0) * z1};
    const auto p = phase_geometry_at(z, 1e-2);
    const auto h = hessian_sigma(z.data());
    // columns of A are eigenvectors with eigenvalues (hessian_eigenvalue, 0)
    for (int c = 0; c < 2; ++c) {
      const double v0 = p.A[0][c], v1 = p.A[1][c];
      const double lam = c == 0 ? p.hessian_eigenvalue : 0.0;
      eig = std::max(eig, std::abs(h.H[0][0] * v0 + h.H[0][1] * v1 - lam * v0));
      eig = std::max(eig, std::abs(h.H[1][0] * v0 + h.H[1][1] * v1 - lam * v1));
    }
  }
  const double lam = phase_geometry_at({1, std::sqrt(2.0)}, 1e-2).lambda_hess;
  const bool ok = fd < 1e-6 && det < 1e-6 && eig < 1e-6 && std::abs(lam - 9) <= 4 * 9 * 2.2e-16;
  return {ok, fmt("FD error %.1e, det error %.1e, eigen-relation error %.1e (tol 1e-6); lambda_hess(1,sqrt2) - 9 = %.1e", fd, det,
                  eig, lam - 9)};
}

Line c8_bona_smith() {
  const auto o = run("bona-smith", {{"s", "2"}});
  const double e = num_at(o.results["fits"][0], "fitted_exponent");
  return {within(e, 2.0, 0.15), fmt("H^0 difference exponent %.4f vs s = 2 (tol 15%%)", e)};
}

Line c9_solitary() {
  const auto o = run("soliton", {{"c", "1"}});
  const double res = std::max(num_at(o.results, "residual"), num_at(o.results, "traveling_residual")), te = num_at(o.results, "traveling_max_error"), n1 = num_at(o.results, "l2_norm");
  const auto o2 = run("soliton", {{"c", "2"}, {"L", "16"}, {"travel", "false"}});
  const double n2 = num_at(o2.results, "l2_norm");
  const auto nu = run("nonuniform", {{"n", "2,4,8"}});
  std::ifstream is(fs::path(nu.run_dir) / "nonuniform.csv");
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    std::vector<double> r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  const double phi1 = num_at(nu.results, "phi1_norm");
  bool mono = rows.size() == 3;
  for (std::size_t i = 1; i < rows.size(); ++i) mono = mono && rows[i][6] < rows[i - 1][6];
  const double d8 = rows.empty() ? 0 : rows.back()[7];
  const bool ok = res < 1e-10 && te < 1e-3 && std::abs(n1 - n2) < 1e-6 && mono && d8 > 1.3 * phi1;
  return {ok, fmt("residual %.1e; traveling error %.1e; |phi_2|-|phi_1| = %.1e; initial distances %s; n=8 distance %.4f = %.3f |phi_1|",
                  res, te, n2 - n1, mono ? "decreasing" : "NOT decreasing", d8, d8 / phi1)};
}

Line c10_illposed() {
  const auto a = run("illposed", {{"d", "2"}, {"eps", "0.1"}, {"s", "1"}, {"N", "64,128,256,512,1024"}});
  const auto b = run("illposed", {{"d", "2"}, {"eps", "0.4"}, {"s", "1"}, {"N", "64,128,256,512,1024"}, {"allow-outside", "true"}});
  const double fa = num_at(a.results, "fitted_exponent"), fb = num_at(b.results, "fitted_exponent");
  std::ifstream is(fs::path(a.run_dir) / "illposed.csv");
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  double lo = INFINITY, hi = 0;
  while (std::getline(is, line)) {
    std::vector<std::string> c;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) c.push_back(cell);
    lo = std::min(lo, std::stod(c[9]));
    hi = std::max(hi, std::stod(c[10]));
  }
  const bool ok = within(fa, 0.175, 0.2) && lo > 0.1 && hi < 10 && fb < 0;
  return {ok, fmt("exponent %.4f vs 0.175 (tol 20%%); |sigma|/(lambda N) in [%.3f, %.3f]; eps=0.4 exponent %.4f", fa, lo, hi, fb)};
}

// moderate-size run of every subcommand
const std::vector<std::pair<std::string, std::map<std::string, std::string>>> suite = {
    {"decay", {{"d", "2"}, {"L", "64"}, {"M", "256"}, {"t-min", "2"}, {"t-max", "12"}, {"t-count", "6"}, {"method", "both"}}},
    {"strichartz", {{"d", "2"}, {"q", "6"}, {"r", "6"}}},
    {"strichartz", {{"mode", "knapp"}, {"q", "4"}, {"r", "3"}, {"R", "16,32,64"}}},
    {"strichartz", {{"mode", "degenerate"}, {"q", "4"}, {"r", "4"}, {"deltas", "0.0625,0.03125"}}},
    {"smoothing", {{"count", "4"}, {"L", "32"}, {"M", "256"}, {"T", "2"}, {"t-samples", "11"}}},
    {"oscint", {{"t", "1,2"}}},
    {"evolve", {{"M", "64"}, {"T", "0.2"}, {"dt", "0.002"}}},
    {"bona-smith", {{"M", "128"}, {"T", "0.1"}, {"n", "2,4,8"}}},
    {"gronwall", {{"M", "64"}, {"T", "0.5"}, {"dt", "0.005"}}},
    {"soliton", {{"L", "16"}, {"M", "128"}, {"T", "2"}, {"dt", "0.02"}}},
    {"nonuniform", {{"n", "2,4"}, {"t", "0.05"}, {"dt", "0.000125"}}},
    {"illposed", {{"N", "64,128,256"}}},
};

std::map<std::string, std::string> csvs_of(const CommandOutcome& o) {
  std::map<std::string, std::string> m;
  for (auto& f : o.outputs)
    if (fs::path(f).extension() == ".csv") {
      std::ifstream is(fs::path(o.run_dir) / f, std::ios::binary);
      std::stringstream ss;
      ss << is.rdbuf();
      m[f] = ss.str();
    }
  return m;
}

Line c11_determinism() {
  int files = 0, differ = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto a = csvs_of(run(suite[i].first, suite[i].second, root / "regression-1"));
    const auto b = csvs_of(run(suite[i].first, suite[i].second, root / "regression-2"));
    for (auto& kv : a) {
      ++files;
      auto it = b.find(kv.first);
      if (it == b.end() || it->second != kv.second) ++differ;
    }
  }
  return {files > 0 && differ == 0, fmt("%d CSV files from %zu commands, %d differ between two runs", files, suite.size(), differ)};
}

}  // namespace

int main() {
  fs::create_directories(root);
  const std::vector<std::pair<std::string, Line (*)()>> criteria = {
      {"kernel decay exponents", c1_decay},    {"oracle equivalence", c2_oracle},
      {"Strichartz scaling", c3_strichartz},   {"degenerate Hessian packet", c4_degenerate},
      {"local smoothing", c5_smoothing},       {"conservation and order", c6_conservation},
      {"Hessian toolkit", c7_hessian},         {"Bona-Smith decay", c8_bona_smith},
      {"solitary waves", c9_solitary},         {"ill-posedness growth", c10_illposed},
      {"determinism", c11_determinism},
  };
  std::printf("acceptance: %zu criteria, %d workers, outputs under %s\n", criteria.size(), worker_count(), root.string().c_str());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
      l = criteria[i].second();
    } catch (const std::exception& e) {
      l = {false, std::string("error: ") + e.what()};
    }
    report(static_cast<int>(i + 1), criteria[i].first, l,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::printf("acceptance: %zu passed, %d failed\n", criteria.size() - failures, failures);
  return failures == 0 ? 0 : 1;
}
