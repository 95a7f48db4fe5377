#include "hbo/osc_integral.hpp"

#include <cmath>

#include "hbo/error.hpp"
#include "hbo/multiplier.hpp"

namespace hbo {

double sigma_phase(const double* xi) { return xi[0] * std::hypot(xi[0], xi[1]); }

std::array<double, 2> sigma_gradient(const double* xi) {
  const double r = std::hypot(xi[0], xi[1]);
  return {r + xi[0] * xi[0] / r, xi[0] * xi[1] / r};
}

Hessian hessian_sigma(const double* xi) {
  const double a = xi[0], b = xi[1];
  const double r2 = a * a + b * b;
  require(r2 > 0, "hessian_sigma: xi must be nonzero");
  const double r3 = r2 * std::sqrt(r2);
  Hessian h;
  h.H[0][0] = (2 * a * a * a + 3 * a * b * b) / r3;
  h.H[0][1] = h.H[1][0] = b * b * b / r3;
  h.H[1][1] = a * a * a / r3;
  h.det = (2 * a * a - b * b) / r2;
  return h;
}

PhaseGeometry phase_geometry_at(const std::array<double, 2>& zeta, double delta) {
  const double z1 = zeta[0], z2 = zeta[1];
  require(delta > 0, "phase_geometry: delta must be positive");
  require(z1 * z1 + z2 * z2 > 0, "phase_geometry: zeta must be nonzero");
  require(std::abs(2 * z1 * z1 - z2 * z2) <= 1e-12 * (z1 * z1 + z2 * z2),
          "phase_geometry: degeneracy condition 2 zeta_1^2 = zeta_2^2 violated");
  PhaseGeometry g;
  g.zeta = zeta;
  const double n = std::sqrt(std::pow(z1, 6) + std::pow(z2, 6));
  const double a = z2 * z2 * z2 / n, b = z1 * z1 * z1 / n;
  g.A = {{{a, -b}, {b, a}}};
  g.lambda_hess = 3 * z1 * (z1 * z1 + z2 * z2);
  g.hessian_eigenvalue = g.lambda_hess / std::pow(z1 * z1 + z2 * z2, 1.5);
  g.D = {std::sqrt(delta), std::cbrt(delta)};
  return g;
}

double taylor_remainder(const PhaseGeometry& g, const double* xi) {
  const double v0 = g.D[0] * xi[0], v1 = g.D[1] * xi[1];
  const double e[2] = {g.A[0][0] * v0 + g.A[0][1] * v1, g.A[1][0] * v0 + g.A[1][1] * v1};
  const double p[2] = {g.zeta[0] + e[0], g.zeta[1] + e[1]};
  const auto grad = sigma_gradient(g.zeta.data());
  const auto h = hessian_sigma(g.zeta.data());
  const double quad = h.H[0][0] * e[0] * e[0] + 2 * h.H[0][1] * e[0] * e[1] + h.H[1][1] * e[1] * e[1];
  return sigma_phase(p) - sigma_phase(g.zeta.data()) - (grad[0] * e[0] + grad[1] * e[1]) - 0.5 * quad;
}

double taylor_remainder_max(const PhaseGeometry& g, int n) {
  double m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double xi[2] = {-1 + 2.0 * i / (n - 1), -1 + 2.0 * j / (n - 1)};
      if (xi[0] * xi[0] + xi[1] * xi[1] > 1) continue;
      m = std::max(m, std::abs(taylor_remainder(g, xi)));
    }
  return m;
}

cplx osc_integral_direct(const double* x, int d, double t, const QuadratureOptions& opt) {
  require(d >= 1 && d <= kMaxDim, "osc_integral: d must be in [1,4]");
  require(opt.density >= 10, "osc_integral: need >= 10 nodes per oscillation period");
  std::array<int, kMaxDim> n{};
  std::array<double, kMaxDim> h{};
  double total = 1;
  for (int a = 0; a < d; ++a) {
    // |d_a Sigma| <= 4 on the annulus for a = 1, <= 2 otherwise
    const double w = std::abs(t) * (a == 0 ? 4.0 : 2.0) + std::abs(x[a]);
    double ha = opt.max_spacing;
    if (w > 0) ha = std::min(ha, 2 * kPi / (w * opt.density));
    n[a] = static_cast<int>(std::ceil(4.0 / ha));
    h[a] = 4.0 / n[a];
    total *= n[a] + 1;
  }
  if (total > opt.node_budget) throw NumericalAbort("osc_integral: node budget exceeded, lower |t| or raise the budget");
  std::array<int, kMaxDim> j{};
  cplx sum = 0;
  const std::size_t N = static_cast<std::size_t>(total);
  std::array<double, kMaxDim> xi{};
  for (std::size_t idx = 0; idx < N; ++idx) {
    std::size_t q = idx;
    double r2 = 0, ph = 0;
    for (int a = d - 1; a >= 0; --a) {
      j[a] = static_cast<int>(q % (n[a] + 1));
      q /= n[a] + 1;
      xi[a] = -2.0 + j[a] * h[a];
      r2 += xi[a] * xi[a];
      ph += x[a] * xi[a];
    }
    // endpoints sit outside the support, so trapezoid weights are uniform here
    if (r2 <= 0.25 || r2 >= 4) continue;
    const double r = std::sqrt(r2);
    sum += psi(r) * std::polar(1.0, t * xi[0] * r + ph);
  }
  double vol = 1;
  for (int a = 0; a < d; ++a) vol *= h[a];
  return sum * vol;
}

namespace {

// int_{S^{d-1}} exp(i rho w_1) dw
double sphere_ft(int d, double rho) {
  const double nu = 0.5 * (d - 2);
  if (rho < 1e-8) return 2 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  if (d == 2) return 2 * kPi * std::cyl_bessel_j(0.0, rho);
  if (d == 3) return 4 * kPi * std::sin(rho) / rho;
  return std::pow(2 * kPi, 0.5 * d) * std::pow(rho, -nu) * std::cyl_bessel_j(nu, rho);
}

}  // namespace

cplx osc_integral_radial(const double* x, int d, double t, double density) {
  require(d >= 2 && d <= kMaxDim, "osc_integral_radial: d must be in [2,4]");
  double xp2 = 0;
  for (int a = 1; a < d; ++a) xp2 += x[a] * x[a];
  double xn = std::sqrt(xp2 + x[0] * x[0]);
  const int n = std::max(400, static_cast<int>(std::ceil(density * (4 * std::abs(t) + xn) * 1.5 / (2 * kPi))));
  const double h = 1.5 / n;
  double sum = 0;
  for (int i = 1; i < n; ++i) {
    const double r = 0.5 + i * h;
    const double y = r * std::sqrt((t * r + x[0]) * (t * r + x[0]) + xp2);
    sum += psi(r) * std::pow(r, d - 1) * sphere_ft(d, y);
  }
  return sum * h;
}

DecayFit decay_sup_fit(int d, const std::vector<double>& times, const SupSearchBox& box) {
  require(d >= 2 && d <= kMaxDim, "decay_sup_fit: d must be in [2,4]");
  require(box.na >= 3 && box.nb >= 2 && box.a_hi > box.a_lo && box.b_hi > 0, "decay_sup_fit: bad search box");
  struct Out {
    double v;
    double x1, xp;
    bool edge;
  };
  auto eval = [d](double t, double x1, double xp) {
    double x[kMaxDim] = {x1, xp, 0, 0};
    return std::abs(osc_integral_radial(x, d, t));
  };
  const auto res = parallel_map<Out>(times.size(), [&](std::size_t k) {
    const double t = times[k];
    double best = -1, c1 = 0, c2 = 0;
    int bi = 0, bj = 0;
    for (int i = 0; i < box.na; ++i)
      for (int j = 0; j < box.nb; ++j) {
        const double x1 = t * (box.a_lo + (box.a_hi - box.a_lo) * i / (box.na - 1));
        const double xp = t * box.b_hi * j / (box.nb - 1);
        const double v = eval(t, x1, xp);
        if (v > best) {
          best = v;
          c1 = x1;
          c2 = xp;
          bi = i;
          bj = j;
        }
      }
    // x' = 0 is a symmetry axis, not an edge
    const bool edge = bi == 0 || bi == box.na - 1 || bj == box.nb - 1;
    double h1 = t * (box.a_hi - box.a_lo) / (box.na - 1), h2 = t * box.b_hi / (box.nb - 1);
    for (int it = 0; it < box.refinements; ++it) {
      double n1 = c1, n2 = c2;
      for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
          const double x1 = c1 + i * h1 / 4, xp = std::abs(c2 + j * h2 / 4);
          const double v = eval(t, x1, xp);
          if (v > best) {
            best = v;
            n1 = x1;
            n2 = xp;
          }
        }
      c1 = n1;
      c2 = n2;
      h1 /= 3;
      h2 /= 3;
    }
    return Out{best, c1, c2, edge};
  });
  std::vector<double> env;
  for (auto& o : res) env.push_back(o.v);
  auto fit = make_decay_fit(times, env);
  for (auto& o : res) {
    std::array<double, kMaxDim> loc{};
    loc[0] = o.x1;
    loc[1] = o.xp;
    fit.argmax.push_back(loc);
    fit.boundary_hit = fit.boundary_hit || o.edge;
  }
  return fit;
}

}  // namespace hbo
