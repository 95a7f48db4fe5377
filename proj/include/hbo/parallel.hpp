#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace hbo {

// pool size from HBO_WORKERS, else hardware concurrency
int worker_count();
void set_worker_count(int n);

// runs body(i) for i in [0,n) on the pool; each index writes its own slot.
// the first exception is rethrown after all workers join
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// deterministic stream: mt19937_64 whose output is fixed by the standard,
// with explicit conversions so results do not depend on library distributions
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // [0,1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace hbo
