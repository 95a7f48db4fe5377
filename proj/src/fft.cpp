#include "hbo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace hbo::fft {

namespace {

std::mutex plan_mutex;

struct PlanCache {
  std::map<std::tuple<int, int, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan get_plan(const Grid& g, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(g.dim(), g.samples(), sign);
  auto& plans = cache().plans;
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<int> n(g.dim(), g.samples());
  fftw_complex* buf = fftw_alloc_complex(g.size());
  // ESTIMATE keeps the algorithm choice, and so the rounding, reproducible
  fftw_plan p = fftw_plan_dft(g.dim(), n.data(), buf, buf,
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  plans.emplace(key, p);
  return p;
}

}  // namespace

void execute(const Grid& g, std::complex<double>* data, int sign) {
  fftw_plan p = get_plan(g, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace hbo::fft
