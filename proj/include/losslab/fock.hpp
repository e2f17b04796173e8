#pragma once

// Photon-number-basis representations: occupation tuples, total-photon
// distributions, coherent and thermal photon statistics, and the cutoff
// projector rank.

#include <complex>
#include <cstdint>
#include <vector>

#include "losslab/numerics.hpp"

namespace losslab {

// Tail mass below this is truncated (and recorded as a deficit).
inline constexpr double kTailTruncation = 1e-15;

// Immutable per-mode occupation tuple (a_1, ..., a_n).
class FockOccupation {
 public:
  explicit FockOccupation(std::vector<std::uint64_t> occupations)
      : occ_(std::move(occupations)) {}

  const std::vector<std::uint64_t>& occupations() const { return occ_; }
  std::size_t n_modes() const { return occ_.size(); }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto a : occ_) t += a;
    return t;
  }

  bool operator==(const FockOccupation&) const = default;
  bool operator<(const FockOccupation& o) const { return occ_ < o.occ_; }

 private:
  std::vector<std::uint64_t> occ_;
};

// Distribution of a total photon count, stored as base-2 log pmf over
// {0, 1, ..., max_count}. Truncated mass is kept in `deficit`.
class PhotonDistribution {
 public:
  PhotonDistribution() = default;
  PhotonDistribution(std::vector<double> log2_pmf, double deficit = 0.0)
      : log2_pmf_(std::move(log2_pmf)), deficit_(deficit) {}

  static PhotonDistribution point_mass(std::uint64_t count);
  static PhotonDistribution poisson(double mean);
  static PhotonDistribution thermal(double mean_photon);

  std::size_t support_size() const { return log2_pmf_.size(); }
  double log2_pmf(std::uint64_t k) const {
    return k < log2_pmf_.size() ? log2_pmf_[k] : kNegInf;
  }
  double pmf(std::uint64_t k) const { return std::exp2(log2_pmf(k)); }
  double deficit() const { return deficit_; }

  // Total mass over the stored support (Kahan-accumulated).
  double total_mass() const;
  double mean() const;

  // Pr{count <= L} over the stored support.
  double cdf(std::uint64_t l) const;

  bool is_normalized(double tol = 1e-9) const {
    return std::abs(total_mass() + deficit_ - 1.0) <= tol;
  }

 private:
  std::vector<double> log2_pmf_;
  double deficit_ = 0.0;
};

// pmf of the sum of two independent totals; deficits add.
PhotonDistribution convolve(const PhotonDistribution& d1,
                            const PhotonDistribution& d2);

// Fock-basis amplitudes of |alpha> up to `cutoff` photons.
std::vector<std::complex<double>> coherent_fock_amplitudes(
    std::complex<double> alpha, std::uint64_t cutoff);

// Rank of the photon number cutoff projector on n modes at cutoff L,
// computed as sum_j C(j+n-1, n-1) and as C(L+n, n), cross-checked.
BigInt projector_rank(std::uint64_t n_modes, std::uint64_t cutoff);

// Tr{Pi_L rho} = Pr{total photons <= L}.
double shadow(const PhotonDistribution& state, std::uint64_t cutoff);

// Shadow of a product state given per-mode total-photon distributions.
double shadow(const std::vector<PhotonDistribution>& modes,
              std::uint64_t cutoff);

// Poisson CDF at L for mean `mean`, exact log-space terms.
double poisson_cdf(double mean, std::uint64_t l);

// Thermal state theta(N') as its geometric photon distribution.
struct ThermalState {
  double mean_photon;
  double geometric_param() const { return mean_photon / (mean_photon + 1.0); }
  PhotonDistribution distribution() const {
    return PhotonDistribution::thermal(mean_photon);
  }
};

}  // namespace losslab
