#include "doctest.h"

#include <cmath>

#include "losslab/fock.hpp"

using namespace losslab;

TEST_CASE("coherent_fock_amplitudes vacuum and Poisson statistics") {
  auto vac = coherent_fock_amplitudes(0.0, 3);
  CHECK(vac[0] == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(vac[1]) == 0.0);
  CHECK(std::abs(vac[3]) == 0.0);

  auto amps = coherent_fock_amplitudes(1.0, 60);
  CHECK(std::norm(amps[0]) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  double mass = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    mass += std::norm(amps[k]);
    mean += static_cast<double>(k) * std::norm(amps[k]);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("truncation mass equals the Poisson tail") {
  auto amps = coherent_fock_amplitudes(std::complex<double>(0.8, 0.6), 4);
  double mass = 0.0;
  for (const auto& a : amps) mass += std::norm(a);
  CHECK(1.0 - mass == doctest::Approx(1.0 - poisson_cdf(1.0, 4)).epsilon(1e-10));
}

TEST_CASE("projector_rank examples") {
  CHECK(projector_rank(2, 2) == 6);
  CHECK(projector_rank(1, 7) == 8);
  CHECK(projector_rank(3, 1) == 4);
}

TEST_CASE("projector_rank summation equals closed form exhaustively") {
  // projector_rank cross-checks internally; cover the (n<=12, L<=30) grid.
  for (std::uint64_t n = 1; n <= 12; ++n)
    for (std::uint64_t l = 0; l <= 30; ++l)
      CHECK_NOTHROW(projector_rank(n, l));
}

TEST_CASE("projector_rank matches brute-force tuple enumeration") {
  // Count occupation tuples with total <= L by direct recursion.
  auto count = [](auto&& self, std::uint64_t modes,
                  std::uint64_t budget) -> std::uint64_t {
    if (modes == 0) return 1;
    std::uint64_t total = 0;
    for (std::uint64_t a = 0; a <= budget; ++a)
      total += self(self, modes - 1, budget - a);
    return total;
  };
  for (std::uint64_t n = 1; n <= 8; ++n)
    for (std::uint64_t l : {0ull, 1ull, 2ull, 5ull, 16ull})
      CHECK(projector_rank(n, l) == count(count, n, l));
}

TEST_CASE("shadow basics") {
  CHECK(shadow(PhotonDistribution::point_mass(0), 0) == 1.0);
  CHECK(shadow(PhotonDistribution::thermal(1.0), 0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(shadow(PhotonDistribution::poisson(1.0), 0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("shadow monotone in cutoff, reaches 1 minus deficit") {
  auto th = PhotonDistribution::thermal(2.0);
  double prev = -1.0;
  for (std::uint64_t l = 0; l < th.support_size() + 5; ++l) {
    double s = shadow(th, l);
    CHECK(s >= prev);
    prev = s;
  }
  CHECK(prev == doctest::Approx(1.0 - th.deficit()).epsilon(1e-12));
}

TEST_CASE("convolution with point mass is identity") {
  auto d = PhotonDistribution::thermal(0.7);
  auto conv = convolve(PhotonDistribution::point_mass(0), d);
  for (std::uint64_t k = 0; k < d.support_size(); ++k)
    CHECK(conv.pmf(k) == doctest::Approx(d.pmf(k)).epsilon(1e-12));
}

TEST_CASE("Poisson additivity under convolution") {
  auto p1 = PhotonDistribution::poisson(1.0);
  auto sum = convolve(p1, p1);
  auto p2 = PhotonDistribution::poisson(2.0);
  for (std::uint64_t k = 0; k <= 40; ++k)
    CHECK(sum.pmf(k) == doctest::Approx(p2.pmf(k)).epsilon(1e-8));
}

TEST_CASE("geometric convolution gives the negative binomial") {
  auto g = PhotonDistribution::thermal(1.0);  // geometric, p = 1/2
  auto nb = convolve(g, g);
  CHECK(nb.pmf(0) == doctest::Approx(0.25).epsilon(1e-12));
  // pmf(k) = C(k+1,1) (1/2)^k (1/4)
  for (std::uint64_t k = 0; k <= 20; ++k)
    CHECK(nb.pmf(k) ==
          doctest::Approx((k + 1.0) * std::exp2(-static_cast<double>(k)) / 4.0)
              .epsilon(1e-10));
}

TEST_CASE("product coherent shadow equals the Poisson CDF") {
  std::vector<PhotonDistribution> modes = {PhotonDistribution::poisson(0.4),
                                           PhotonDistribution::poisson(1.1),
                                           PhotonDistribution::poisson(0.5)};
  for (std::uint64_t l : {0ull, 1ull, 3ull, 7ull})
    CHECK(shadow(modes, l) == doctest::Approx(poisson_cdf(2.0, l)).epsilon(1e-10));
}

TEST_CASE("thermal distribution invariants") {
  for (double mean : {0.25, 0.9, 1.0, 3.5}) {
    auto th = PhotonDistribution::thermal(mean);
    CHECK(th.is_normalized());
    CHECK(th.mean() == doctest::Approx(mean).epsilon(1e-10));
    ThermalState ts{mean};
    CHECK(ts.geometric_param() == doctest::Approx(mean / (mean + 1.0)));
    CHECK(th.pmf(0) == doctest::Approx(1.0 / (mean + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("FockOccupation totals") {
  FockOccupation occ({1, 2, 3, 0});
  CHECK(occ.total() == 6);
  CHECK(occ.n_modes() == 4);
  FockOccupation big(std::vector<std::uint64_t>(4, 1ull << 60));
  CHECK(big.total() == (1ull << 62));
}
