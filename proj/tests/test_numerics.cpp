#include "doctest.h"

#include <cmath>

#include "losslab/numerics.hpp"
#include "losslab/rng.hpp"

using namespace losslab;

TEST_CASE("g_entropy known values") {
  CHECK(g_entropy(0.0) == 0.0);
  CHECK(g_entropy(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g_entropy(2.0) ==
        doctest::Approx(3.0 * std::log2(3.0) - 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(g_entropy(-0.1), std::domain_error);
}

TEST_CASE("g_entropy monotone and concave on a grid") {
  double prev = g_entropy(0.02);
  double prev_diff = -1.0;
  bool first = true;
  for (double x = 0.13; x <= 100.0; x += 0.11) {
    double cur = g_entropy(x);
    CHECK(cur > prev);
    double diff = cur - prev;
    if (!first) CHECK(diff < prev_diff + 1e-12);
    prev_diff = diff;
    prev = cur;
    first = false;
  }
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("log_binomial exact values") {
  CHECK(log_binomial(4, 2).log2_value ==
        doctest::Approx(std::log2(6.0)).epsilon(1e-14));
  CHECK(log_binomial(10, 5).log2_value ==
        doctest::Approx(std::log2(252.0)).epsilon(1e-14));
  CHECK(log_binomial(37, 0).log2_value == 0.0);
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);
}

TEST_CASE("log-gamma path matches exact integers") {
  // Force the log-gamma branch and compare against big integers.
  for (std::uint64_t n : {70u, 123u, 500u, 1000u}) {
    for (std::uint64_t k :
         {std::uint64_t{0}, std::uint64_t{1}, n / 3, n / 2, n - 1, n}) {
      double exact = log2_bigint(binomial_exact(n, k));
      double lg = log_binomial(n, k).log2_value;
      if (exact == 0.0)
        CHECK(std::abs(lg) < 1e-12);
      else
        CHECK(std::abs(lg - exact) / exact < 1e-12);
    }
  }
}

TEST_CASE("Pascal identity in linear domain, n <= 60") {
  for (std::uint64_t n = 2; n <= 60; ++n)
    for (std::uint64_t k = 1; k < n; ++k) {
      double lhs = std::exp2(log_binomial(n, k).log2_value);
      double rhs = std::exp2(log_binomial(n - 1, k - 1).log2_value) +
                   std::exp2(log_binomial(n - 1, k).log2_value);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("LogProb addition agrees with exact rational addition") {
  KeyedRng rng(42);
  for (int i = 0; i < 1000; ++i) {
    // Small rationals a/2^10, b/2^10.
    double a = static_cast<double>(rng.bits(2 * i) % 1024) / 1024.0;
    double b = static_cast<double>(rng.bits(2 * i + 1) % 1024) / 1024.0;
    LogProb sum = LogProb::from_linear(a) + LogProb::from_linear(b);
    CHECK(sum.to_linear() == doctest::Approx(a + b).epsilon(1e-12));
  }
}

TEST_CASE("LogProb zero is absorbing and huge exponents do not overflow") {
  LogProb zero = LogProb::zero();
  LogProb one = LogProb::one();
  CHECK((zero * one).is_zero());
  CHECK((zero + one).to_linear() == 1.0);
  LogProb huge{1e6};
  LogProb sum = huge + huge;
  CHECK(sum.log2_value == doctest::Approx(1e6 + 1.0).epsilon(1e-12));
  CHECK(LogProb::from_linear(0.0).is_zero());
  CHECK_THROWS_AS(LogProb::from_linear(-1.0), std::domain_error);
}

TEST_CASE("round trip linear -> log -> linear") {
  for (double v : {0.5, 0.25, 1.0, 2.0, 1024.0})
    CHECK(LogProb::from_linear(v).to_linear() == v);
}
