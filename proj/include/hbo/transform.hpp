#pragma once
#include "hbo/field.hpp"

namespace hbo {

SpectralField forward_transform(const RealField& f);
SpectralField forward_transform(const ComplexField& f);
// real part of the synthesis; use inverse_transform_complex when the
// spectrum is not Hermitian
RealField inverse_transform(const SpectralField& F);
ComplexField inverse_transform_complex(const SpectralField& F);

// max imaginary residue of the synthesis relative to its max modulus
double imaginary_residue(const SpectralField& F);

// evaluate the band-limited interpolant of F at an arbitrary point x
cplx evaluate_at(const SpectralField& F, const double* x);

}  // namespace hbo
