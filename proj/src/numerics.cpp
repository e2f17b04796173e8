#include "losslab/numerics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace losslab {

double g_entropy(double x) {
  if (x < 0.0 || std::isnan(x))
    throw std::domain_error("g_entropy: x must be nonnegative");
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0 || std::isnan(p))
    throw std::domain_error("binary_entropy: p must lie in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BigInt binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("binomial_exact: k > n");
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

double log2_bigint(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log2_bigint: value must be positive");
  // Extract the top bits and account for the shift.
  BigInt x = v;
  long shift = 0;
  while (boost::multiprecision::msb(x) > 960) {
    x >>= 64;
    shift += 64;
  }
  return std::log2(x.convert_to<double>()) + static_cast<double>(shift);
}

double log_factorial(std::uint64_t k) {
  return std::lgamma(static_cast<double>(k) + 1.0) * kLog2E;
}

LogProb log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("log_binomial: k > n");
  if (n <= 60) return LogProb{log2_bigint(binomial_exact(n, k))};
  double lg = std::lgamma(static_cast<double>(n) + 1.0) -
              std::lgamma(static_cast<double>(k) + 1.0) -
              std::lgamma(static_cast<double>(n - k) + 1.0);
  return LogProb{lg * kLog2E};
}

}  // namespace losslab
