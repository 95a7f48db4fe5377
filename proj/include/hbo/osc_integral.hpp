#pragma once
#include <array>
#include <vector>

#include "hbo/field.hpp"
#include "hbo/linear_lab.hpp"

namespace hbo {

using Mat2 = std::array<std::array<double, 2>, 2>;

double sigma_phase(const double* xi);                    // xi_1 |xi|
std::array<double, 2> sigma_gradient(const double* xi);  // (|xi| + xi_1^2/|xi|, xi_1 xi_2/|xi|)

struct Hessian {
  Mat2 H{};
  double det = 0;
};
// closed form (2xi1^3+3xi1xi2^2, xi2^3; xi2^3, xi1^3)/|xi|^3, det (2xi1^2-xi2^2)/|xi|^2
Hessian hessian_sigma(const double* xi);

struct PhaseGeometry {
  std::array<double, 2> zeta{};
  Mat2 A{};                  // columns: eigenvectors of the Hessian at zeta
  double lambda_hess = 0;    // 3 zeta_1 (zeta_1^2 + zeta_2^2), eigenvalue of |zeta|^3 times the Hessian
  double hessian_eigenvalue = 0;  // lambda_hess / |zeta|^3, eigenvalue of the Hessian itself
  std::array<double, 2> D{};      // (delta^{1/2}, delta^{1/3})
};
PhaseGeometry phase_geometry_at(const std::array<double, 2>& zeta, double delta);

// E_delta(xi) = Sigma(zeta + A D xi) - Sigma(zeta) - grad.(A D xi) - (1/2) H(A D xi).(A D xi)
double taylor_remainder(const PhaseGeometry& g, const double* xi);
double taylor_remainder_max(const PhaseGeometry& g, int samples_per_axis = 41);

struct QuadratureOptions {
  double density = 10;       // nodes per oscillation period along each axis
  double max_spacing = 0.005; // resolution floor for psi itself
  double node_budget = 4e8;
};

// tensor trapezoid of int psi(|xi|) exp(i[t xi_1|xi| + x.xi]) dxi over [-2,2]^d
cplx osc_integral_direct(const double* x, int d, double t, const QuadratureOptions& opt = {});

// same integral reduced to one radial quadrature with the sphere's Fourier transform
cplx osc_integral_radial(const double* x, int d, double t, double density = 20);

struct SupSearchBox {
  double a_lo = -3.0, a_hi = 0.5;  // x_1 / t
  double b_hi = 1.5;               // |x'| / t
  int na = 71, nb = 31;
  int refinements = 7;
};

// sup over x of |I(x,t)| per time, radial evaluation, lattice with local refinement
DecayFit decay_sup_fit(int d, const std::vector<double>& times, const SupSearchBox& box = {});

}  // namespace hbo
