#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace proxpt {

// Deterministic pseudo-random source. All randomness in the project flows
// through this class. The generator is std::mt19937_64 (its output sequence
// is pinned by the C++ standard) and every variate transform below is a fixed
// algorithm, so a given seed yields bit-identical streams on any platform.
// std::uniform_real_distribution and friends are implementation-defined and
// must not be used anywhere in the project.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0, 1): the top 53 bits as a mantissa
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; the second variate of each pair is cached
  double normal();

  // uniform integer in [0, n); rejection sampling, no modulo bias
  std::uint64_t below(std::uint64_t n);

  // Fisher-Yates; the portable replacement for std::shuffle
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace proxpt
