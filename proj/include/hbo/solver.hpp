#pragma once
#include <functional>
#include <vector>

#include "hbo/field.hpp"

namespace hbo {

struct SolverConfig {
  double dt = 1e-3;
  double T = 1.0;
  bool dealias = true;
  double mu = 0;            // strength of the added -mu Lap u term
  int invariant_stride = 5; // steps between invariant records
  bool nonlinear = true;    // false: linear flow only
  double monitor_s = 2;     // Sobolev index of the energy monitor
  double blowup_factor = 1e3;
  int snapshot_stride = 0;  // 0: no snapshots
};

struct InvariantRecord {
  double time = 0;
  double I = 0, M = 0, H = 0;
  double hs_norm = 0;
  double lipschitz_integrand = 0;  // ||u||_inf + ||grad u||_inf
  double grad_inf = 0;
};

// -u d_{x1} u = -(1/2) d_{x1}(u^2), spectral, 2/3-rule truncated when dealias is set
RealField nonlinear_rhs(const RealField& u, bool dealias = true);

// integrating-factor RK4 on the Fourier coefficients
class Integrator {
 public:
  Integrator(const Grid& g, const SolverConfig& cfg);
  void step(SpectralField& u) const;
  void step(SpectralField& u, double dt) const;
  SpectralField rhs(const SpectralField& u) const;
  void project(SpectralField& u) const;  // apply the dealias mask
  const std::vector<double>& mask() const { return mask_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  Grid g_;
  SolverConfig cfg_;
  std::vector<double> mask_, xi1_;
  std::vector<cplx> lin_;  // linear symbol i xi_1|xi| - mu |xi|^2
  mutable double cached_dt_ = -1;
  mutable std::vector<cplx> e_half_, e_full_;
  void prepare(double dt) const;
};

InvariantRecord measure(const SpectralField& u, double t, double s);

struct Trajectory {
  std::vector<InvariantRecord> records;
  std::vector<double> snapshot_times;
  std::vector<RealField> snapshots;
  RealField final_state;
  double lipschitz_budget = 0;  // K(T) by trapezoid over records
  double grad_budget = 0;       // int ||grad u||_inf
  double energy_constant = 0;   // smallest c with sup ||u||_{H^s} <= ||u0||_{H^s} exp(c int ||grad u||_inf)
};

// observer sees (time, spectrum) at every record point
using Observer = std::function<void(double, const SpectralField&)>;
Trajectory evolve(const RealField& u0, const SolverConfig& cfg, const Observer& obs = {});

// lockstep evolution of two data with the same config; obs(t, u1, u2) at record points
struct PairTrajectory {
  Trajectory a, b;
};
using PairObserver = std::function<void(double, const SpectralField&, const SpectralField&)>;
PairTrajectory evolve_pair(const RealField& u1, const RealField& u2, const SolverConfig& cfg, const PairObserver& obs);

// <R1 Lap u, u> / (||R1 Lap u|| ||u||)
double skew_adjointness_residual(const RealField& u);

// lambda u(lambda x) on the grid with L/lambda and the same samples
RealField rescale_solution(const RealField& u, double lambda);

// smooth test data
RealField gaussian_datum(const Grid& g, double amplitude, double width);

}  // namespace hbo
