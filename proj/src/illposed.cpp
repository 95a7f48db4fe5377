#include "hbo/illposed.hpp"

#include <cmath>

#include "hbo/error.hpp"
#include "hbo/fit.hpp"
#include "hbo/parallel.hpp"

namespace hbo {

CounterexampleParams make_params(double N, double eps, double s, int d, bool strict) {
  require(d >= 2 && d <= kMaxDim, "counterexample: d must be in [2,4]");
  require(N > 1, "counterexample: N must be > 1");
  require(eps > 0, "counterexample: eps must be positive");
  if (strict)
    require(eps < 1.0 / (2 * d - 1), "counterexample: eps = " + std::to_string(eps) +
                                         " violates the constraint 0 < eps < 1/(2d-1) = " + std::to_string(1.0 / (2 * d - 1)));
  CounterexampleParams p{N, eps, s, d};
  p.lambda = std::pow(N, -(1 + eps));
  return p;
}

double BoxRegion::volume() const {
  double v = 1;
  for (int a = 0; a < d; ++a) v *= std::max(0.0, iv[a][1] - iv[a][0]);
  return v;
}

bool BoxRegion::contains(const double* xi) const {
  for (int a = 0; a < d; ++a)
    if (xi[a] < iv[a][0] || xi[a] > iv[a][1]) return false;
  return true;
}

bool BoxRegion::empty() const {
  for (int a = 0; a < d; ++a)
    if (!(iv[a][1] > iv[a][0])) return true;
  return false;
}

namespace {

BoxRegion make_box(const CounterexampleParams& p, double a0, double a1, double b0, double b1) {
  BoxRegion b;
  b.d = p.d;
  b.iv[0] = {a0, a1};
  for (int a = 1; a < p.d; ++a) b.iv[a] = {b0, b1};
  return b;
}

double root_d(const CounterexampleParams& p) { return std::pow(p.lambda, 1.0 / p.d); }

}  // namespace

BoxRegion box_D1(const CounterexampleParams& p) {
  const double l = p.lambda, r = root_d(p);
  return make_box(p, p.N, p.N + l, r / 2, r);
}

BoxRegion box_D2(const CounterexampleParams& p) {
  const double l = p.lambda, r = root_d(p);
  return make_box(p, 3 * l, 4 * l, r / 2, r);
}

BoxRegion box_D3(const CounterexampleParams& p) {
  const double l = p.lambda, r = root_d(p);
  return make_box(p, p.N + 3 * l, p.N + 5 * l, r, 2 * r);
}

BoxRegion overlap_K(const CounterexampleParams& p, const double* xi) {
  const auto b1 = box_D1(p), b2 = box_D2(p);
  BoxRegion k;
  k.d = p.d;
  for (int a = 0; a < p.d; ++a) k.iv[a] = {std::max(b1.iv[a][0], xi[a] - b2.iv[a][1]), std::min(b1.iv[a][1], xi[a] - b2.iv[a][0])};
  return k;
}

double phi_amplitude(const CounterexampleParams& p, int which) {
  require(which == 1 || which == 2, "build_phi: which must be 1 or 2");
  const double base = std::pow(p.lambda, (1.0 - 2 * p.d) / (2.0 * p.d));
  return which == 1 ? base * std::pow(p.N, -p.s) : base;
}

PhiDescriptor build_phi(const CounterexampleParams& p, int which) {
  PhiDescriptor ph;
  ph.amplitude = phi_amplitude(p, which);
  ph.box = which == 1 ? box_D1(p) : box_D2(p);
  // 16-point Gauss-Legendre per axis; the weight is smooth on the box
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  std::array<std::array<double, 16>, kMaxDim> nx{}, nw{};
  for (int a = 0; a < p.d; ++a) {
    const double c = 0.5 * (ph.box.iv[a][0] + ph.box.iv[a][1]), h = 0.5 * (ph.box.iv[a][1] - ph.box.iv[a][0]);
    for (int i = 0; i < 8; ++i) {
      nx[a][2 * i] = c - h * gx[i];
      nx[a][2 * i + 1] = c + h * gx[i];
      nw[a][2 * i] = nw[a][2 * i + 1] = h * gw[i];
    }
  }
  std::size_t total = 1;
  for (int a = 0; a < p.d; ++a) total *= 16;
  double acc = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t q = idx;
    double w = 1, r2 = 0;
    for (int a = 0; a < p.d; ++a) {
      const int i = static_cast<int>(q % 16);
      q /= 16;
      w *= nw[a][i];
      r2 += nx[a][i] * nx[a][i];
    }
    acc += w * std::pow(1 + r2, p.s);
  }
  ph.hs_norm = std::sqrt(acc * ph.amplitude * ph.amplitude) * std::pow(2 * kPi, -0.5 * p.d);
  return ph;
}

static double sig_term(const double* v, int d) {
  double r2 = 0;
  for (int a = 0; a < d; ++a) r2 += v[a] * v[a];
  return v[0] * std::sqrt(r2);
}

double sigma(const double* xi, const double* eta, int d) {
  double diff[kMaxDim] = {};
  for (int a = 0; a < d; ++a) diff[a] = xi[a] - eta[a];
  return -sig_term(xi, d) + sig_term(diff, d) + sig_term(eta, d);
}

cplx duhamel_factor(double sig, double t) {
  const double z = sig * t;
  if (std::abs(z) < 1e-4) return t * cplx(-z / 2, 1 - z * z / 6);
  return (std::polar(1.0, z) - 1.0) / sig;
}

cplx second_iterate_spectrum(const CounterexampleParams& p, double t, const double* xi, int n) {
  require(n >= 1, "second_iterate: need at least one node per axis");
  if (!box_D3(p).contains(xi)) return 0;
  const auto K = overlap_K(p, xi);
  if (K.empty()) return 0;
  const double a1 = phi_amplitude(p, 1), a2 = phi_amplitude(p, 2);
  std::size_t total = 1;
  for (int a = 0; a < p.d; ++a) total *= n;
  if (static_cast<double>(total) > 1e8) throw NumericalAbort("second_iterate: quadrature budget exceeded");
  std::array<double, kMaxDim> h{};
  for (int a = 0; a < p.d; ++a) h[a] = (K.iv[a][1] - K.iv[a][0]) / n;
  cplx acc = 0;
  double eta[kMaxDim];
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t q = idx;
    for (int a = 0; a < p.d; ++a) {
      eta[a] = K.iv[a][0] + (static_cast<double>(q % n) + 0.5) * h[a];
      q /= n;
    }
    acc += duhamel_factor(sigma(xi, eta, p.d), t);
  }
  const double vol = K.volume() / static_cast<double>(total);
  return xi[0] * std::polar(1.0, t * sig_term(xi, p.d)) * acc * vol * a1 * a2;
}

namespace {

double norm_at(const CounterexampleParams& p, double t, int n) {
  const auto D3 = box_D3(p);
  std::size_t total = 1;
  for (int a = 0; a < p.d; ++a) total *= n;
  std::array<double, kMaxDim> h{};
  for (int a = 0; a < p.d; ++a) h[a] = (D3.iv[a][1] - D3.iv[a][0]) / n;
  const auto vals = parallel_map<double>(total, [&](std::size_t idx) {
    double xi[kMaxDim];
    std::size_t q = idx;
    double r2 = 0;
    for (int a = 0; a < p.d; ++a) {
      xi[a] = D3.iv[a][0] + (static_cast<double>(q % n) + 0.5) * h[a];
      q /= n;
      r2 += xi[a] * xi[a];
    }
    return std::pow(1 + r2, p.s) * std::norm(second_iterate_spectrum(p, t, xi, n));
  });
  double acc = 0;
  for (double v : vals) acc += v;
  return std::sqrt(acc * D3.volume() / static_cast<double>(total)) * std::pow(2 * kPi, -0.5 * p.d);
}

}  // namespace

IterateNorm second_iterate_norm(const CounterexampleParams& p, double t, int start_nodes, int max_nodes) {
  require(start_nodes >= 1 && max_nodes >= start_nodes, "second_iterate_norm: bad node counts");
  IterateNorm out;
  int n = start_nodes;
  double prev = norm_at(p, t, n);
  out.value = prev;
  out.nodes = n;
  out.last_change = INFINITY;
  while (2 * n <= max_nodes) {
    n *= 2;
    const double cur = norm_at(p, t, n);
    out.last_change = std::abs(cur - prev) / std::abs(cur);
    out.value = cur;
    out.nodes = n;
    if (out.last_change < 1e-3) break;
    prev = cur;
  }
  return out;
}

ResonanceBand resonance_band(const CounterexampleParams& p, int m) {
  require(m >= 2, "resonance_band: need >= 2 samples per axis");
  const auto D3 = box_D3(p);
  const int d = p.d;
  const double lN = p.lambda * p.N, lmid = std::pow(p.lambda, (d + 1.0) / d);
  ResonanceBand b;
  b.ratio_min = b.mid_min = INFINITY;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= m;
  double xi[kMaxDim], eta[kMaxDim], diff[kMaxDim];
  const double l = p.lambda, N = p.N;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t q = i;
    for (int a = 0; a < d; ++a) {
      xi[a] = D3.iv[a][0] + (D3.iv[a][1] - D3.iv[a][0]) * (static_cast<double>(q % m) + 0.5) / m;
      q /= m;
    }
    const auto K = overlap_K(p, xi);
    if (K.empty()) continue;
    const double sx = sig_term(xi, d);
    if (sx < (N + 3 * l) * (N + 3 * l) || sx > (N + 6 * l) * (N + 6 * l)) b.xi_phase_ok = false;
    for (std::size_t j = 0; j < total; ++j) {
      std::size_t r = j;
      for (int a = 0; a < d; ++a) {
        eta[a] = K.iv[a][0] + (K.iv[a][1] - K.iv[a][0]) * (static_cast<double>(r % m) + 0.5) / m;
        r /= m;
        diff[a] = xi[a] - eta[a];
      }
      const double ratio = std::abs(sigma(xi, eta, d)) / lN;
      b.ratio_min = std::min(b.ratio_min, ratio);
      b.ratio_max = std::max(b.ratio_max, ratio);
      const double mid = sig_term(diff, d) / lmid;
      b.mid_min = std::min(b.mid_min, mid);
      b.mid_max = std::max(b.mid_max, mid);
      const double se = sig_term(eta, d);
      if (se < N * N || se > (N + 2 * l) * (N + 2 * l)) b.eta_phase_ok = false;
    }
  }
  return b;
}

GrowthFit growth_fit(const std::vector<double>& Ns, double eps, double s, double t, int d, bool strict) {
  require(Ns.size() >= 2, "growth_fit: need at least two values of N");
  require(t != 0, "growth_fit: t must be nonzero");
  GrowthFit g;
  g.eps = eps;
  g.s = s;
  g.t = t;
  g.d = d;
  g.predicted_exponent = 1.0 / (2 * d) - eps * (2 * d - 1.0) / (2 * d);
  std::vector<double> x, y;
  for (double N : Ns) {
    const auto p = make_params(N, eps, s, d, strict);
    GrowthRow row;
    row.N = N;
    row.lambda = p.lambda;
    row.norm = second_iterate_norm(p, t).value;
    if (!(row.norm > 0)) throw NumericalAbort("growth_fit: non-positive norm at N = " + std::to_string(N));
    row.norm_over_t = row.norm / std::abs(t);
    const auto D3 = box_D3(p);
    double c[kMaxDim];
    for (int a = 0; a < d; ++a) c[a] = 0.5 * (D3.iv[a][0] + D3.iv[a][1]);
    row.overlap_ratio = overlap_K(p, c).volume() / std::pow(p.lambda, (2 * d - 1.0) / d);
    row.band = resonance_band(p);
    g.rows.push_back(row);
    x.push_back(N);
    y.push_back(row.norm_over_t);
  }
  g.fitted_exponent = fit_power_law(x, y).slope;
  return g;
}

}  // namespace hbo
