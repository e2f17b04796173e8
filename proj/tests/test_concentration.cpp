#include "doctest.h"

#include <cmath>

#include "losslab/concentration.hpp"

using namespace losslab;

TEST_CASE("GeometricLaw mean round trip") {
  for (double mu : {0.25, 0.5, 0.9, 1.0, 3.0}) {
    auto law = GeometricLaw::from_mean(mu);
    CHECK(law.mean() == doctest::Approx(mu).epsilon(1e-14));
  }
  CHECK(GeometricLaw::from_mean(1.0).p == doctest::Approx(0.5));
}

TEST_CASE("hoeffding_lower_bound") {
  CHECK(hoeffding_lower_bound(100, 0.1) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(hoeffding_lower_bound(0, 0.1) == 0.0);
  CHECK_THROWS_AS(hoeffding_lower_bound(10, 0.0), std::domain_error);
}

TEST_CASE("binomial tail dominates the Hoeffding guarantee") {
  for (std::uint64_t trials : {10ull, 50ull, 200ull})
    for (double eta : {0.3, 0.5, 0.8})
      for (double d3 : {0.05, 0.1, 0.2}) {
        auto thr = static_cast<std::int64_t>(
            std::ceil(static_cast<double>(trials) * (eta + d3)));
        double exact = binomial_tail_below({trials, eta}, thr);
        CHECK(exact >= hoeffding_lower_bound(trials, d3) - 1e-12);
      }
}

TEST_CASE("negative_binomial_tail small cases by hand") {
  GeometricLaw half{0.5};
  CHECK(negative_binomial_tail(half, 2, 0) == 1.0);
  CHECK(negative_binomial_tail(half, 2, 1) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(negative_binomial_tail(half, 2, 2) == doctest::Approx(0.5).epsilon(1e-13));
  // Single geometric: Pr{Z >= t} = p^t.
  for (std::uint64_t t = 0; t <= 30; ++t)
    CHECK(negative_binomial_tail(half, 1, t) ==
          doctest::Approx(std::exp2(-static_cast<double>(t))).epsilon(1e-12));
}

TEST_CASE("negative binomial tail matches direct convolution") {
  GeometricLaw law{0.4};
  auto g = PhotonDistribution::thermal(law.mean());
  auto sum = convolve(convolve(g, g), g);
  for (std::uint64_t t : {0ull, 1ull, 3ull, 7ull, 15ull})
    CHECK(negative_binomial_tail(law, 3, t) ==
          doctest::Approx(1.0 - (t == 0 ? 0.0 : shadow(sum, t - 1)))
              .epsilon(1e-10));
}

TEST_CASE("chernoff_constant closed forms") {
  auto opt = chernoff_constant(1.0, 0.5);
  CHECK(opt.x_star == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(opt.constant == doctest::Approx(27.0 / 32.0).epsilon(1e-10));
  CHECK(!opt.hit_boundary);

  // Stationary point x* = (mu + delta) / (p (1 + mu + delta)).
  for (double p : {0.2, 0.5, 0.9})
    for (double delta : {0.05, 0.1, 0.5, 1.0}) {
      double m = p / (1.0 - p) + delta;
      double xs = m / (p * (1.0 + m));
      auto o = chernoff_constant(delta, p);
      CHECK(o.x_star == doctest::Approx(xs).epsilon(1e-7));
      CHECK(o.constant < 1.0);
      CHECK(o.constant > 0.0);
      CHECK(o.t_star == doctest::Approx(std::log(o.x_star)).epsilon(1e-12));
    }
}

TEST_CASE("chernoff_constant agrees with a brute-force grid search") {
  for (double p : {0.3, 0.6})
    for (double delta : {0.1, 0.4}) {
      double m = p / (1.0 - p) + delta;
      double best = 1e300;
      for (int i = 1; i < 200000; ++i) {
        double x = 1.0 + (1.0 / p - 1.0) * i / 200000.0;
        double f = (1.0 - p) / (1.0 - p * x) * std::pow(x, -m);
        best = std::min(best, f);
      }
      CHECK(chernoff_constant(delta, p).constant ==
            doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("exact tail never exceeds C^n") {
  for (double mu : {0.5, 0.9, 2.0})
    for (double delta : {0.1, 0.3})
      for (std::uint64_t n : {1ull, 5ull, 20ull, 100ull}) {
        auto law = GeometricLaw::from_mean(mu);
        double exact = geometric_sum_tail_above(law, n, delta);
        double c = chernoff_constant(delta, law.p).constant;
        CHECK(exact <= std::pow(c, static_cast<double>(n)) + 1e-12);
      }
}

TEST_CASE("monte carlo estimators are deterministic and consistent") {
  GeometricLaw law{0.5};
  auto a = monte_carlo_geometric_tail(law, 5, 8, 20000, 11);
  auto b = monte_carlo_geometric_tail(law, 5, 8, 20000, 11);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  auto c = monte_carlo_geometric_tail(law, 5, 8, 20000, 12);
  CHECK(a.estimate != c.estimate);  // different seed, different draw

  double exact = negative_binomial_tail(law, 5, 8);
  CHECK(std::abs(a.estimate - exact) <= 4.0 * a.stderr_ + 1e-9);

  BinomialTransmission bt{40, 0.5};
  auto d = monte_carlo_binomial_below(bt, 20, 20000, 11);
  auto e = monte_carlo_binomial_below(bt, 20, 20000, 11);
  CHECK(d.estimate == e.estimate);
  double bex = binomial_tail_below(bt, 20);
  CHECK(std::abs(d.estimate - bex) <= 4.0 * d.stderr_ + 1e-9);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(chernoff_constant(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(chernoff_constant(0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(geometric_sum_tail_above(GeometricLaw{0.5}, 0, 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(monte_carlo_geometric_tail(GeometricLaw{0.5}, 2, 1, 0, 1),
                  std::domain_error);
}
