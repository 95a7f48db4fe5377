#pragma once
#include "hbo/field.hpp"

namespace hbo {

enum class MultiplierKind {
  riesz1,          // -i xi_1/|xi|, 0 at xi=0
  frac_laplacian,  // |xi|^{2 sigma}, 0 at xi=0 for sigma < 0
  bessel,          // (1+|xi|^2)^{sigma/2}
  propagator,      // exp(i t xi_1 |xi|)
  littlewood_paley,// psi(2^{-k}|xi|)
  derivative_x1    // i xi_1
};

struct MultiplierSpec {
  MultiplierKind kind = MultiplierKind::propagator;
  double order = 0;  // sigma for frac_laplacian and bessel
  double time = 0;   // t for propagator
  int band = 0;      // k for littlewood_paley

  static MultiplierSpec riesz1() { return {MultiplierKind::riesz1}; }
  static MultiplierSpec frac_laplacian(double sigma) { return {MultiplierKind::frac_laplacian, sigma}; }
  static MultiplierSpec bessel(double sigma) { return {MultiplierKind::bessel, sigma}; }
  static MultiplierSpec propagator(double t) { return {MultiplierKind::propagator, 0, t}; }
  static MultiplierSpec littlewood_paley(int k) { return {MultiplierKind::littlewood_paley, 0, 0, k}; }
  static MultiplierSpec derivative_x1() { return {MultiplierKind::derivative_x1}; }
};

cplx symbol(const MultiplierSpec& m, const double* xi, int d);
SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m);

// Littlewood-Paley profile: smooth, supported in [1/2,2], sum_k psi(2^{-k} rho) = 1
double psi(double rho);
SpectralField littlewood_paley_project(const SpectralField& F, int k);

// unit-ball bump exp(-1/(1-|y|^2))
double unit_ball_bump(const double* y, int d);

// mollifier profile: 1 on [0,1/2], 0 on [1,inf), smooth in between
double rho_cutoff(double r);

}  // namespace hbo
