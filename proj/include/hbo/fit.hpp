#pragma once
#include <vector>

namespace hbo {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // rms of log residuals
};

// ordinary least squares of log(y) on log(x)
LineFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hbo
