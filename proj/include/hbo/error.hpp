#pragma once
#include <stdexcept>
#include <string>

namespace hbo {

// bad input: shapes, parameter domains, resolution requests
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// blow-up, non-convergence, budget overruns
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace hbo
