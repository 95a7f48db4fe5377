#pragma once
#include <vector>

#include "hbo/field.hpp"

namespace hbo {

// (sum w(xi)^{2s} |F|^2 (dk/2pi)^d)^{1/2}, w = |xi| (homogeneous, xi=0 dropped) or <xi>
double sobolev_norm(const SpectralField& F, double s, bool homogeneous);
// plain L^2 via Plancherel
double l2_norm(const SpectralField& F);

// Riemann sum over the box; p = infinity gives the max
double lp_norm(const RealField& f, double p);
double lp_norm(const ComplexField& f, double p);

// L^r in time of given spatial norms sampled uniformly with spacing dt.
// trapezoid weights; a single sample is only meaningful for r = infinity
double time_norm(const std::vector<double>& spatial, double dt, double r);
double mixed_norm(const std::vector<ComplexField>& frames, double dt, double r, double q);
double mixed_norm(const std::vector<RealField>& frames, double dt, double r, double q);

// ||[J^s,f]g||_2 / (||grad f||_inf ||J^{s-1} g||_2 + ||J^s f||_2 ||g||_inf)
double kato_ponce_spotcheck(const RealField& f, const RealField& g, double s);

// <f,g> = sum f g dx^d
double inner_product(const RealField& f, const RealField& g);

}  // namespace hbo
