#include "losslab/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace losslab {

PhotonDistribution PhotonDistribution::point_mass(std::uint64_t count) {
  std::vector<double> pmf(count + 1, kNegInf);
  pmf[count] = 0.0;
  return PhotonDistribution(std::move(pmf));
}

PhotonDistribution PhotonDistribution::poisson(double mean) {
  if (mean < 0.0) throw std::domain_error("poisson: mean must be >= 0");
  if (mean == 0.0) return point_mass(0);
  std::vector<double> pmf;
  double log2_mean = std::log2(mean);
  // Walk out until the remaining tail is below the truncation policy.
  double cum = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    double lp = static_cast<double>(k) * log2_mean - mean * kLog2E -
                log_factorial(k);
    pmf.push_back(lp);
    cum += std::exp2(lp);
    if (k > mean && 1.0 - cum < kTailTruncation) break;
    if (k > 100000) break;
  }
  return PhotonDistribution(std::move(pmf), std::max(0.0, 1.0 - cum));
}

PhotonDistribution PhotonDistribution::thermal(double mean_photon) {
  if (mean_photon < 0.0)
    throw std::domain_error("thermal: mean must be >= 0");
  if (mean_photon == 0.0) return point_mass(0);
  double p = mean_photon / (mean_photon + 1.0);
  double log2_p = std::log2(p);
  double log2_1mp = std::log2(1.0 - p);
  // Geometric tail beyond L is p^(L+1).
  std::size_t support = static_cast<std::size_t>(
      std::ceil(std::log(kTailTruncation) / std::log(p))) + 2;
  std::vector<double> pmf(support);
  for (std::size_t l = 0; l < support; ++l)
    pmf[l] = static_cast<double>(l) * log2_p + log2_1mp;
  double tail = std::exp2(static_cast<double>(support) * log2_p);
  return PhotonDistribution(std::move(pmf), tail);
}

double PhotonDistribution::total_mass() const {
  KahanSum s;
  for (double lp : log2_pmf_) s.add(std::exp2(lp));
  return s.value();
}

double PhotonDistribution::mean() const {
  KahanSum s;
  for (std::size_t k = 0; k < log2_pmf_.size(); ++k)
    s.add(static_cast<double>(k) * std::exp2(log2_pmf_[k]));
  return s.value();
}

double PhotonDistribution::cdf(std::uint64_t l) const {
  KahanSum s;
  std::size_t last = std::min<std::size_t>(l + 1, log2_pmf_.size());
  for (std::size_t k = 0; k < last; ++k) s.add(std::exp2(log2_pmf_[k]));
  return std::min(1.0, s.value());
}

PhotonDistribution convolve(const PhotonDistribution& d1,
                            const PhotonDistribution& d2) {
  std::size_t n1 = d1.support_size(), n2 = d2.support_size();
  std::vector<double> out(n1 + n2 - 1, kNegInf);
  for (std::size_t k = 0; k < out.size(); ++k) {
    LogProb acc = LogProb::zero();
    std::size_t i0 = k >= n2 ? k - n2 + 1 : 0;
    std::size_t i1 = std::min(k + 1, n1);
    for (std::size_t i = i0; i < i1; ++i)
      acc = acc + LogProb{d1.log2_pmf(i) + d2.log2_pmf(k - i)};
    out[k] = acc.log2_value;
  }
  // Lost mass from either factor is lost from the product.
  double deficit = d1.deficit() + d2.deficit() - d1.deficit() * d2.deficit();
  return PhotonDistribution(std::move(out), deficit);
}

std::vector<std::complex<double>> coherent_fock_amplitudes(
    std::complex<double> alpha, std::uint64_t cutoff) {
  std::vector<std::complex<double>> amps(cutoff + 1);
  double a2 = std::norm(alpha);
  std::complex<double> cur = std::exp(std::complex<double>(-a2 / 2.0, 0.0));
  for (std::uint64_t k = 0; k <= cutoff; ++k) {
    amps[k] = cur;
    cur *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return amps;
}

BigInt projector_rank(std::uint64_t n_modes, std::uint64_t cutoff) {
  if (n_modes < 1) throw std::domain_error("projector_rank: n_modes >= 1");
  BigInt sum = 0;
  for (std::uint64_t j = 0; j <= cutoff; ++j)
    sum += binomial_exact(j + n_modes - 1, n_modes - 1);
  BigInt closed = binomial_exact(cutoff + n_modes, n_modes);
  if (sum != closed)
    throw std::logic_error("projector_rank: summation/closed-form mismatch");
  return closed;
}

double shadow(const PhotonDistribution& state, std::uint64_t cutoff) {
  return state.cdf(cutoff);
}

double shadow(const std::vector<PhotonDistribution>& modes,
              std::uint64_t cutoff) {
  if (modes.empty()) return 1.0;
  PhotonDistribution total = modes[0];
  for (std::size_t i = 1; i < modes.size(); ++i)
    total = convolve(total, modes[i]);
  return total.cdf(cutoff);
}

double poisson_cdf(double mean, std::uint64_t l) {
  if (mean < 0.0) throw std::domain_error("poisson_cdf: mean must be >= 0");
  if (mean == 0.0) return 1.0;
  double log2_mean = std::log2(mean);
  KahanSum s;
  for (std::uint64_t k = 0; k <= l; ++k)
    s.add(std::exp2(static_cast<double>(k) * log2_mean - mean * kLog2E -
                    log_factorial(k)));
  return std::min(1.0, s.value());
}

}  // namespace losslab
