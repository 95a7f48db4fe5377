#pragma once
#include <array>
#include <vector>

#include "hbo/field.hpp"
#include "hbo/parallel.hpp"

namespace hbo {

struct StrichartzTriple {
  double q = 2, r = 2;
  int d = 2;
  double s = 0;
  bool admissible = false;
};

// s from the scaling relation, admissibility from the d-dependent region
StrichartzTriple make_triple(double q, double r, int d);

struct DecayFit {
  std::vector<double> times;
  std::vector<double> envelope;
  std::vector<std::array<double, kMaxDim>> argmax;  // location of the sup per time
  double fitted_exponent = 0;
  double residual = 0;
  bool boundary_hit = false;
};

DecayFit make_decay_fit(std::vector<double> times, std::vector<double> env);
std::vector<double> log_spaced(double a, double b, int n);

RealField propagate(const RealField& f, double t);
SpectralField propagate(const SpectralField& F, double t);

// psi(2^{-k}|xi|) sampled on the lattice
SpectralField annulus_datum(const Grid& g, int band = 0);

// sup over the sample lattice of |e^{tR1 Lap} P_k delta| per time
DecayFit decay_envelope_experiment(const Grid& g, int band, const std::vector<double>& times);

struct TimeWindow {
  double t0 = 0, t1 = 1;
  int samples = 17;
  double dt() const { return samples > 1 ? (t1 - t0) / (samples - 1) : 0.0; }
  double at(int i) const { return t0 + i * dt(); }
};

double strichartz_mixed_norm(const SpectralField& F, double q, double r, const TimeWindow& w);
double strichartz_ratio(const SpectralField& F, const StrichartzTriple& tr, const TimeWindow& w);

// f(x) -> f(lambda x) on the grid with L/lambda and identical samples
SpectralField rescale_grid_compatible(const SpectralField& F, double lambda);

// Knapp slab: indicator of [0,1/R] x [0,1]^{d-1}, trapezoid half weights on faces
Grid knapp_grid(double R, int d, int n1 = 4, double pad = 1.125);
SpectralField knapp_datum(const Grid& g, double R);

struct KnappRow {
  double R = 0, mixed = 0, hs = 0, ratio = 0, tube_min = 0;
};
struct KnappStudy {
  StrichartzTriple triple;
  std::vector<KnappRow> rows;
  double fitted_exponent = 0;  // of the ratio in R
  double mixed_exponent = 0;   // of the mixed norm alone
  double predicted = 0;        // 1/q + 1/r - 1/2
};
KnappStudy knapp_study(double q, double r, int d, const std::vector<double>& Rs, int n1 = 4, int time_samples = 17);

// wave packet adapted to the degenerate Hessian direction at zeta
struct DegenerateSetup {
  double delta = 0;
  std::array<double, 2> zeta{};
  double c0 = 0.5;  // time window [0, c0/delta]
};
std::array<double, 2> default_zeta();
Grid degenerate_grid(double delta, const std::array<double, 2>& zeta, double points_per_width = 8);
SpectralField degenerate_datum_2d(const Grid& g, double delta, const std::array<double, 2>& zeta);

struct DegenerateRow {
  double delta = 0, hs = 0, mixed = 0, center_min = 0;  // center_min: min_t |u(center)| / delta^{5/6}
};
struct DegenerateStudy {
  double q = 4, r = 4, s = 0;
  std::vector<DegenerateRow> rows;
  double hs_exponent = 0, mixed_exponent = 0;
  double hs_predicted = 5.0 / 12.0, mixed_predicted = 0;
};
DegenerateStudy degenerate_study(double q, double r, const std::vector<double>& deltas, double c0 = 0.5, int time_samples = 17);

// weighted space-time L^2 over t in [-T,T] and the two Fourier-side bounds
struct SmoothingResult {
  double numerator = 0;
  double sharp_bound = 0;  // int |F|^2 |xi| / (2 xi_1^2 + |xi'|^2)
  double hs_bound = 0;     // ||f||^2 in H^{-1/2}
  double ratio() const { return numerator / sharp_bound; }
  double ratio_hs() const { return numerator / hs_bound; }
};
SmoothingResult local_smoothing(const SpectralField& F, double alpha, double T, int time_samples);
double local_smoothing_ratio(const SpectralField& F, double alpha, double T, int time_samples);

// sum of a few real Gaussian packets at random frequencies and positions, zero mean
SpectralField random_packet_datum(const Grid& g, Rng& rng, double kmin = 1.0, double kmax = 3.0);

}  // namespace hbo
