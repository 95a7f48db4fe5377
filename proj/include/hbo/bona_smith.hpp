#pragma once
#include <string>
#include <vector>

#include "hbo/field.hpp"
#include "hbo/solver.hpp"

namespace hbo {

// (rho(|xi|/n) u0^)^v with rho = 1 on [0,1/2], 0 on [1,inf)
SpectralField mollify(const SpectralField& U, double n);
RealField mollify(const RealField& u0, double n);

// a |xi|^{-(s + d/2 + eps)} (1 - rho(|xi|)), inside the dealiased band
SpectralField algebraic_tail_datum(const Grid& g, double s, double eps, double amplitude);

struct BonaSmithRow {
  double n = 0, m = 0;
  std::vector<double> sup_diff;  // sup_t ||u_n - u_m||_{H^alpha}, one per alpha
  std::vector<double> init_diff; // same at t = 0
  double K_n = 0, K_m = 0;       // Lipschitz budgets of both branches
  bool aborted = false;
  std::string abort_reason;
};

struct BonaSmithTable {
  double s = 0;
  std::vector<double> alphas;
  std::vector<BonaSmithRow> rows;
  std::vector<double> fitted_exponents;  // decay in n of sup_diff per alpha
  double u0_hs = 0;
};

// rows pair n with m = m_factor * n; rows run concurrently
BonaSmithTable bona_smith_experiment(const RealField& u0, double s, const std::vector<double>& n_list,
                                     const SolverConfig& cfg, double m_factor = 2);

struct GronwallPoint {
  double t = 0, diff = 0, budget = 0;  // budget = int ||grad u1|| + ||grad u2||
};
struct GronwallReport {
  std::vector<GronwallPoint> series;
  double diff0 = 0;
  double c_empirical = 0;  // smallest c making the exponential bound hold along the run
  double max_diff = 0;
  bool holds(double c) const;
};
GronwallReport gronwall_uniqueness_experiment(const RealField& phi1, const RealField& phi2, const SolverConfig& cfg);

}  // namespace hbo
