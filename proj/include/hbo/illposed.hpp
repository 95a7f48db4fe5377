#pragma once
#include <array>
#include <vector>

#include "hbo/field.hpp"

namespace hbo {

struct CounterexampleParams {
  double N = 64, eps = 0.1, s = 1;
  int d = 2;
  double lambda = 0;  // N^{-(1+eps)}
};

// strict: eps must lie in (0, 1/(2d-1)); the degradation study passes strict = false
CounterexampleParams make_params(double N, double eps, double s, int d, bool strict = true);

struct BoxRegion {
  int d = 2;
  std::array<std::array<double, 2>, kMaxDim> iv{};
  double volume() const;
  bool contains(const double* xi) const;
  bool empty() const;
};

BoxRegion box_D1(const CounterexampleParams& p);  // [N, N+l] x [l^{1/d}/2, l^{1/d}]^{d-1}
BoxRegion box_D2(const CounterexampleParams& p);  // [3l, 4l] x [l^{1/d}/2, l^{1/d}]^{d-1}
BoxRegion box_D3(const CounterexampleParams& p);  // [N+3l, N+5l] x [l^{1/d}, 2 l^{1/d}]^{d-1}
// {eta : eta in D1, xi - eta in D2}
BoxRegion overlap_K(const CounterexampleParams& p, const double* xi);

struct PhiDescriptor {
  double amplitude = 0;
  BoxRegion box;
  double hs_norm = 0;  // (2pi)^{-d/2} (int_box <xi>^{2s} a^2)^{1/2}, Gauss-Legendre on the box
};
PhiDescriptor build_phi(const CounterexampleParams& p, int which);
double phi_amplitude(const CounterexampleParams& p, int which);

double sigma(const double* xi, const double* eta, int d);
// (exp(i sigma t) - 1)/sigma, series below |sigma t| < 1e-4
cplx duhamel_factor(double sig, double t);

// int_{K_xi} xi_1 e^{it xi_1|xi|} (e^{i sigma t}-1)/sigma phi1^(eta) phi2^(xi-eta) deta, tensor midpoint
cplx second_iterate_spectrum(const CounterexampleParams& p, double t, const double* xi, int quad_density = 32);

// (2pi)^{-d/2} (int_{D3} <xi>^{2s} |I_N^(xi,t)|^2)^{1/2}; nodes doubled from 32 until < 0.1% change
struct IterateNorm {
  double value = 0;
  int nodes = 0;
  double last_change = 0;
};
IterateNorm second_iterate_norm(const CounterexampleParams& p, double t, int start_nodes = 32, int max_nodes = 64);

struct ResonanceBand {
  double ratio_min = 0, ratio_max = 0;   // |sigma| / (lambda N)
  double mid_min = 0, mid_max = 0;       // (xi_1-eta_1)|xi-eta| / lambda^{(d+1)/d}
  bool xi_phase_ok = true, eta_phase_ok = true;
};
ResonanceBand resonance_band(const CounterexampleParams& p, int samples_per_axis = 9);

struct GrowthRow {
  double N = 0, lambda = 0;
  double norm = 0, norm_over_t = 0;
  double overlap_ratio = 0;  // |K_xi| / lambda^{(2d-1)/d} at the center of D3
  ResonanceBand band;
};
struct GrowthFit {
  double eps = 0, s = 0, t = 0;
  int d = 2;
  std::vector<GrowthRow> rows;
  double fitted_exponent = 0;
  double predicted_exponent = 0;  // 1/(2d) - eps (2d-1)/(2d)
};
GrowthFit growth_fit(const std::vector<double>& Ns, double eps, double s, double t, int d = 2, bool strict = true);

}  // namespace hbo
