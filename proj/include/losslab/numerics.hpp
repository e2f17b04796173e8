#pragma once

// Log-space combinatorics and the entropy functions used throughout.
// All probabilities and binomial coefficients are carried as base-2
// logarithms; zero is represented by -infinity and behaves absorbingly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace losslab {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLog2E = 1.4426950408889634074;  // log2(e)

// A nonnegative quantity stored as its base-2 logarithm.
struct LogProb {
  double log2_value = kNegInf;

  static LogProb zero() { return LogProb{kNegInf}; }
  static LogProb one() { return LogProb{0.0}; }

  static LogProb from_linear(double x) {
    if (x < 0.0) throw std::domain_error("LogProb: negative linear value");
    return LogProb{x == 0.0 ? kNegInf : std::log2(x)};
  }

  double to_linear() const { return std::exp2(log2_value); }

  bool is_zero() const { return std::isinf(log2_value) && log2_value < 0; }

  // Multiplication in the linear domain.
  LogProb operator*(LogProb o) const {
    if (is_zero() || o.is_zero()) return zero();
    return LogProb{log2_value + o.log2_value};
  }

  // Addition in the linear domain via log-sum-exp; never overflows.
  LogProb operator+(LogProb o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    double hi = log2_value, lo = o.log2_value;
    if (lo > hi) std::swap(hi, lo);
    return LogProb{hi + std::log2(1.0 + std::exp2(lo - hi))};
  }
};

// Kahan-compensated accumulator for linear-domain sums of many small terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// g(x) = (x+1)log2(x+1) - x log2 x, the thermal-state entropy in bits.
// Continuous at 0 with g(0) = 0.
double g_entropy(double x);

// Binary entropy h2(p) in bits; exact 0 at the endpoints.
double binary_entropy(double p);

// Exact binomial coefficient, arbitrary precision.
BigInt binomial_exact(std::uint64_t n, std::uint64_t k);

// log2 C(n, k). Exact-integer path for n <= 60, log-gamma otherwise.
LogProb log_binomial(std::uint64_t n, std::uint64_t k);

// log2 of an arbitrary-precision positive integer.
double log2_bigint(const BigInt& v);

// log2 k!.
double log_factorial(std::uint64_t k);

}  // namespace losslab
