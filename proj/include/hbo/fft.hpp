#pragma once
#include <complex>

#include "hbo/grid.hpp"

namespace hbo::fft {

// In-place unnormalized c2c DFT over a d-cube of side M.
// sign = -1 forward, +1 backward. Plans are cached and shared.
void execute(const Grid& g, std::complex<double>* data, int sign);

}  // namespace hbo::fft
