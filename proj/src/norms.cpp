#include "hbo/norms.hpp"

#include <cmath>
#include <limits>

#include "hbo/error.hpp"
#include "hbo/multiplier.hpp"
#include "hbo/transform.hpp"

namespace hbo {

double sobolev_norm(const SpectralField& F, double s, bool homogeneous) {
  require(std::isfinite(s), "sobolev_norm: s must be finite");
  const auto r = F.grid.xi_abs();
  double acc = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a2 = std::norm(F.coeffs[i]);
    if (a2 == 0) continue;
    double w;
    if (homogeneous) {
      if (r[i] == 0) continue;
      w = std::pow(r[i], 2 * s);
    } else {
      w = std::pow(1 + r[i] * r[i], s);
    }
    acc += w * a2;
  }
  const double out = std::sqrt(acc * F.grid.dual_cell_volume());
  if (!std::isfinite(out)) throw NumericalAbort("sobolev_norm: overflow for s = " + std::to_string(s));
  return out;
}

double l2_norm(const SpectralField& F) {
  double acc = 0;
  for (auto& c : F.coeffs) acc += std::norm(c);
  return std::sqrt(acc * F.grid.dual_cell_volume());
}

namespace {

template <class V>
double lp_impl(const Grid& g, const V& vals, double p) {
  require(p >= 1, "lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0;
    for (auto& v : vals) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0;
  if (p == 2) {
    for (auto& v : vals) acc += std::norm(v);
    return std::sqrt(acc * g.cell_volume());
  }
  for (auto& v : vals) acc += std::pow(std::abs(v), p);
  return std::pow(acc * g.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const RealField& f, double p) { return lp_impl(f.grid, f.values, p); }
double lp_norm(const ComplexField& f, double p) { return lp_impl(f.grid, f.values, p); }

double time_norm(const std::vector<double>& v, double dt, double r) {
  require(!v.empty(), "time_norm: empty time sequence");
  if (std::isinf(r)) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  require(r > 0, "time_norm: r must be positive");
  require(v.size() >= 2, "time_norm: finite r needs at least two samples");
  double acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
    acc += w * std::pow(v[i], r);
  }
  return std::pow(acc * dt, 1.0 / r);
}

double mixed_norm(const std::vector<ComplexField>& frames, double dt, double r, double q) {
  require(!frames.empty(), "mixed_norm: empty time sequence");
  std::vector<double> sp;
  for (auto& f : frames) sp.push_back(lp_norm(f, q));
  return time_norm(sp, dt, r);
}

double mixed_norm(const std::vector<RealField>& frames, double dt, double r, double q) {
  require(!frames.empty(), "mixed_norm: empty time sequence");
  std::vector<double> sp;
  for (auto& f : frames) sp.push_back(lp_norm(f, q));
  return time_norm(sp, dt, r);
}

double inner_product(const RealField& f, const RealField& g) {
  require(f.grid == g.grid, "inner_product: grid mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
  return acc * f.grid.cell_volume();
}

double kato_ponce_spotcheck(const RealField& f, const RealField& g, double s) {
  require(f.grid == g.grid, "kato_ponce: grid mismatch");
  require(s > 0, "kato_ponce: s must be positive");
  const Grid& G = f.grid;
  const auto Js = MultiplierSpec::bessel(s);
  RealField fg(G);
  for (std::size_t i = 0; i < G.size(); ++i) fg.values[i] = f.values[i] * g.values[i];
  const auto Jfg = inverse_transform(apply_multiplier(forward_transform(fg), Js));
  const auto Gh = forward_transform(g);
  const auto Jg = inverse_transform(apply_multiplier(Gh, Js));
  RealField comm(G);
  for (std::size_t i = 0; i < G.size(); ++i) comm.values[i] = Jfg.values[i] - f.values[i] * Jg.values[i];
  const double num = lp_norm(comm, 2);

  const auto Fh = forward_transform(f);
  double grad_inf = 0;
  {
    std::vector<double> g2(G.size(), 0.0);
    for (int a = 0; a < G.dim(); ++a) {
      const auto kx = G.xi_axis(a);
      SpectralField D(G);
      for (std::size_t i = 0; i < G.size(); ++i) D.coeffs[i] = Fh.coeffs[i] * cplx(0, kx[i]);
      const auto d = inverse_transform(D);
      for (std::size_t i = 0; i < G.size(); ++i) g2[i] += d.values[i] * d.values[i];
    }
    for (double v : g2) grad_inf = std::max(grad_inf, std::sqrt(v));
  }
  const double den = grad_inf * sobolev_norm(Gh, s - 1, false) + sobolev_norm(Fh, s, false) * lp_norm(g, INFINITY);
  if (!(den > 0)) throw ValidationError("kato_ponce: zero denominator");
  return num / den;
}

}  // namespace hbo
