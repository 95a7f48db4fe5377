#pragma once
#include <vector>

#include "hbo/field.hpp"
#include "hbo/solver.hpp"

namespace hbo {

struct SolitaryWave {
  double c = 1;
  RealField profile;
  double residual = 0;
  int iterations = 0;
  std::vector<double> history;    // residual per iteration
  std::vector<double> stabilizer; // Petviashvili factor per iteration
  bool monotone_tail = true;      // residual monotone after the transient
};

struct PetviashviliOptions {
  double tol = 1e-10;
  int max_iter = 2000;
  double gamma = 2;
  bool dealias = true;
};

// || -c d1 phi - R1 Lap phi + P(phi d1 phi) ||_2, P the dealias projection when set
double stationary_residual(const RealField& phi, double c, bool dealias = true);

// (c + |xi|) phi^ = (1/2) (phi^2)^ with the stabilizing factor raised to gamma
SolitaryWave petviashvili_solve(double c, const Grid& g, const PetviashviliOptions& opt = {});
SolitaryWave petviashvili_solve(double c, const RealField& seed, const PetviashviliOptions& opt = {});

// phi(x - shift e_1), spectral
RealField translate_x1(const RealField& f, double shift);

// max over x2 of |phi(x1,x2) - phi(x1,-x2)| relative to max |phi|
double x2_asymmetry(const RealField& f);

struct TravelingReport {
  double transit_time = 0;
  double max_error = 0;   // max_t ||u - phi(. - ct)|| / ||phi||
  double mass_drift = 0;  // max relative drift of M
  std::vector<double> times, errors;
};
TravelingReport traveling_test(const SolitaryWave& w, double T, const SolverConfig& cfg);

struct NonuniformReport {
  int n = 0;
  double t = 0, c1 = 0, c2 = 0;
  double phi1_norm = 0;
  double norm_c1 = 0, norm_c2 = 0;
  double init_distance = 0;
  double distance_evolved = 0, distance_analytic = 0;
  double inner_evolved = 0, inner_analytic = 0;
};
// c1 = n + 1, c2 = n, both solved on g and moved to time t
NonuniformReport nonuniform_continuity_demo(int n, double t, const Grid& g, const SolverConfig& cfg, double phi1_norm,
                                            const PetviashviliOptions& opt = {});

}  // namespace hbo
