#pragma once

// Exact and bounded tail probabilities: binomial (Hoeffding), sums of
// geometric random variables (negative binomial), and the optimized
// exponential-moment constant C(delta, p).

#include <cstdint>

#include "losslab/fock.hpp"

namespace losslab {

// pmf p^k (1-p) on {0,1,...}; mean p/(1-p).
struct GeometricLaw {
  double p;
  double mean() const { return p / (1.0 - p); }
  static GeometricLaw from_mean(double mu) {
    return GeometricLaw{mu / (mu + 1.0)};
  }
};

// Transmitted-photon count: Binomial(trials, eta).
struct BinomialTransmission {
  std::uint64_t trials;
  double eta;
};

struct ChernoffOptimum {
  double t_star;    // tilt parameter
  double x_star;    // e^(t_star), in (1, 1/p)
  double constant;  // C(delta, p) < 1
  bool hit_boundary = false;
};

// Exact CDF Pr{K <= threshold}.
double binomial_tail_below(const BinomialTransmission& dist,
                           std::int64_t threshold);

// Hoeffding: Pr{K <= ceil(S (eta + delta3))} >= 1 - exp(-2 delta3^2 S).
double hoeffding_lower_bound(std::uint64_t trials, double delta3);

// Exact Pr{sum of n iid geometric(p) >= ceil(n (mu + delta))}.
double geometric_sum_tail_above(const GeometricLaw& law, std::uint64_t n,
                                double delta);

// Exact negative-binomial tail Pr{sum >= threshold} for n geometric(p).
double negative_binomial_tail(const GeometricLaw& law, std::uint64_t n,
                              std::uint64_t threshold);

// Minimize f(x) = [(1-p)/(1-p x)] x^-(mu+delta) over x in (1, 1/p).
// Then Pr{(1/n) sum Z_i >= mu + delta} <= C^n with C = f(x*).
ChernoffOptimum chernoff_constant(double delta, double p);

struct TailEstimate {
  double estimate;
  double stderr_;
  std::uint64_t samples;
};

// Seeded frequency estimate of Pr{sum of n geometric(p) >= threshold}.
TailEstimate monte_carlo_geometric_tail(const GeometricLaw& law,
                                        std::uint64_t n,
                                        std::uint64_t threshold,
                                        std::uint64_t samples,
                                        std::uint64_t seed);

// Seeded frequency estimate of Pr{Bin(trials, eta) <= threshold}.
TailEstimate monte_carlo_binomial_below(const BinomialTransmission& dist,
                                        std::int64_t threshold,
                                        std::uint64_t samples,
                                        std::uint64_t seed);

}  // namespace losslab
