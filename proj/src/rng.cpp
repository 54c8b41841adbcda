#include "proxpt/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace proxpt {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  double u1 = 1.0 - uniform();  // (0, 1]: keeps the log finite
  double u2 = uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(two_pi * u2);
  have_spare_ = true;
  return radius * std::cos(two_pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  constexpr std::uint64_t u64_max = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t rem = u64_max % n;
  if (rem == n - 1) return next_u64() % n;  // n divides 2^64: no bias
  std::uint64_t limit = u64_max - rem;      // largest multiple of n <= 2^64-1
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

}  // namespace proxpt
