#pragma once

// Counter-based keyed generator. Every draw is a pure function of
// (seed, stream, counter), so parallel schedules cannot change results.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace losslab {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t stream_a = 0,
           std::uint64_t stream_b = 0) {
    key_ = detail::splitmix64(seed);
    key_ = detail::splitmix64(key_ ^ stream_a);
    key_ = detail::splitmix64(key_ ^ stream_b);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return detail::splitmix64(key_ ^ detail::splitmix64(counter));
  }

  // Uniform in (0, 1]; never exactly 0 so logs are safe.
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Geometric on {0,1,...} with pmf p^k (1-p); mean p/(1-p).
  std::uint64_t geometric(std::uint64_t counter, double p) const {
    if (p <= 0.0) return 0;
    double u = uniform(counter);
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(p)));
  }

  // Bernoulli(eta).
  bool bernoulli(std::uint64_t counter, double eta) const {
    return uniform(counter) <= eta;
  }

  // Poisson(mean) via inversion; consumes a single counter.
  std::uint64_t poisson(std::uint64_t counter, double mean) const {
    double u = uniform(counter);
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf && k < 100000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

 private:
  std::uint64_t key_;
};

}  // namespace losslab
