#include "doctest.h"

#include <cmath>

#include "losslab/channel.hpp"
#include "losslab/rng.hpp"

using namespace losslab;

TEST_CASE("apply_to_coherent") {
  std::complex<double> alpha(1.0, -0.5);
  CHECK(apply_to_coherent(alpha, 1.0) == alpha);
  CHECK(std::abs(apply_to_coherent(alpha, 0.0)) == 0.0);
  std::complex<double> a2(std::sqrt(2.0), 0.0);
  CHECK(std::norm(apply_to_coherent(a2, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("fock_loss_distribution") {
  auto d0 = fock_loss_distribution(0, 0.3);
  CHECK(d0.pmf(0) == doctest::Approx(1.0));

  auto d5 = fock_loss_distribution(5, 1.0);
  CHECK(d5.pmf(5) == doctest::Approx(1.0));

  auto d2 = fock_loss_distribution(2, 0.5);
  CHECK(d2.pmf(0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(d2.pmf(1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(d2.pmf(2) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("beamsplitter expansion is unitary on the |a>|0> sector") {
  for (std::uint64_t a = 0; a <= 40; ++a)
    for (double eta : {0.0, 0.1, 0.5, 0.77, 1.0}) {
      auto e = BeamsplitterExpansion::make(a, eta);
      double sum = 0.0;
      for (double amp : e.amplitudes) sum += amp * amp;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      // Squared amplitudes are exactly the binomial pmf.
      auto pmf = fock_loss_distribution(a, eta);
      for (std::uint64_t k = 0; k <= a; ++k)
        CHECK(e.amplitudes[k] * e.amplitudes[k] ==
              doctest::Approx(pmf.pmf(k)).epsilon(1e-12));
    }
}

TEST_CASE("binomial_cdf exact values") {
  CHECK(binomial_cdf(4, 0.5, 2) == doctest::Approx(11.0 / 16.0).epsilon(1e-14));
  CHECK(binomial_cdf(4, 0.5, 4) == 1.0);
  CHECK(binomial_cdf(4, 0.5, -1) == 0.0);
  CHECK(binomial_cdf(10, 0.0, 0) == 1.0);
  CHECK(binomial_cdf(10, 1.0, 9) == 0.0);
}

TEST_CASE("output_shadow_exact") {
  auto point4 = PhotonDistribution::point_mass(4);
  CHECK(output_shadow_exact(point4, 0.5, 2) ==
        doctest::Approx(0.6875).epsilon(1e-13));
  CHECK(output_shadow_exact(point4, 0.5, 1000) == 1.0);
  CHECK(output_shadow_exact(PhotonDistribution::point_mass(0), 0.7, 0) == 1.0);
}

TEST_CASE("eta = 1 output shadow equals the input shadow") {
  auto th = PhotonDistribution::thermal(1.3);
  for (std::uint64_t l : {0ull, 1ull, 2ull, 5ull})
    CHECK(output_shadow_exact(th, 1.0, l) ==
          doctest::Approx(shadow(th, l)).epsilon(1e-12));
}

TEST_CASE("output shadow nonincreasing in eta") {
  auto th = PhotonDistribution::thermal(2.0);
  double prev = 2.0;
  for (double eta = 0.0; eta <= 1.0; eta += 0.05) {
    double s = output_shadow_exact(th, eta, 3);
    CHECK(s <= prev + 1e-12);
    prev = s;
  }
}

TEST_CASE("coherent product output shadow equals thinned Poisson CDF") {
  // Poisson(mean) through loss eta -> Poisson(eta * mean).
  double mean = 1.7, eta = 0.4;
  auto in = PhotonDistribution::poisson(mean);
  for (std::uint64_t l : {0ull, 1ull, 2ull, 4ull})
    CHECK(output_shadow_exact(in, eta, l) ==
          doctest::Approx(poisson_cdf(eta * mean, l)).epsilon(1e-10));
}

TEST_CASE("lemma2 bound examples") {
  ChannelParams params{0.5, 100, 1.0};
  auto b = lemma2_output_shadow_bound(0.01, 0.11, 0.1, params);
  CHECK(b.lower_bound ==
        doctest::Approx(1.0 - 0.2 - 0.01 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(b.output_cutoff == 61);

  auto vac = lemma2_output_shadow_bound(1.0, 0.11, 0.1, params);
  CHECK(vac.lower_bound == 0.0);

  CHECK_THROWS_AS(lemma2_output_shadow_bound(0.01, 0.001, 0.2, params),
                  std::domain_error);
}

TEST_CASE("lemma2 bound never exceeds the exact output shadow") {
  // Randomized diagonal inputs with input shadow >= 1 - delta1.
  KeyedRng rng(7);
  std::uint64_t cases = 0;
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    std::uint64_t n = 5 + rng.bits(3 * trial) % 46;  // 5..50
    double eta = 0.2 + 0.6 * rng.uniform(3 * trial + 1);
    double ns = 1.0;
    double delta1 = 0.05 * rng.uniform(3 * trial + 2);
    double delta2 = 0.2;
    ChannelParams params{eta, n, ns};
    double d3max = (static_cast<double>(n) * delta2 - eta) /
                   std::ceil(static_cast<double>(n) * ns);
    if (d3max <= 0.0) continue;
    double delta3 = d3max / 2.0;

    // Build the input: mass 1 - delta1 spread below ceil(n ns), the rest
    // right above it.
    auto cutoff =
        static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * ns));
    std::vector<double> pmf(cutoff + 3, kNegInf);
    KeyedRng wrng(trial, 99);
    double wsum = 0.0;
    std::vector<double> w(cutoff + 1);
    for (std::uint64_t k = 0; k <= cutoff; ++k) {
      w[k] = wrng.uniform(k);
      wsum += w[k];
    }
    for (std::uint64_t k = 0; k <= cutoff; ++k)
      pmf[k] = std::log2(w[k] / wsum * (1.0 - delta1));
    if (delta1 > 0.0) pmf[cutoff + 2] = std::log2(delta1);
    PhotonDistribution input(std::move(pmf));

    auto bound = lemma2_output_shadow_bound(delta1, delta2, delta3, params);
    double exact = output_shadow_exact(input, eta, bound.output_cutoff);
    CHECK(exact >= bound.lower_bound - 1e-12);
    ++cases;
  }
  CHECK(cases >= 40);
}

TEST_CASE("swapped thinning convention is tabulated, not guessed") {
  auto point4 = PhotonDistribution::point_mass(4);
  double physical =
      output_shadow_exact(point4, 0.3, 1, ThinningConvention::transmitted_eta);
  double swapped =
      output_shadow_exact(point4, 0.3, 1, ThinningConvention::swapped);
  CHECK(physical == doctest::Approx(binomial_cdf(4, 0.3, 1)).epsilon(1e-13));
  CHECK(swapped == doctest::Approx(binomial_cdf(4, 0.7, 1)).epsilon(1e-13));
  CHECK(physical != swapped);
}

TEST_CASE("ChannelParams validation") {
  CHECK_THROWS_AS((ChannelParams{1.2, 1, 1.0}).validate(), std::domain_error);
  CHECK_THROWS_AS((ChannelParams{0.5, 0, 1.0}).validate(), std::domain_error);
  CHECK_THROWS_AS((ChannelParams{0.5, 1, -1.0}).validate(), std::domain_error);
}
