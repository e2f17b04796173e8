#include "losslab/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace losslab {

void ChannelParams::validate() const {
  if (eta < 0.0 || eta > 1.0)
    throw std::domain_error("ChannelParams: eta must lie in [0,1]");
  if (n_modes < 1)
    throw std::domain_error("ChannelParams: n_modes must be >= 1");
  if (photon_budget < 0.0)
    throw std::domain_error("ChannelParams: photon budget must be >= 0");
}

BeamsplitterExpansion BeamsplitterExpansion::make(std::uint64_t a,
                                                  double eta) {
  BeamsplitterExpansion e;
  e.input_photons = a;
  e.amplitudes.resize(a + 1);
  for (std::uint64_t k = 0; k <= a; ++k) {
    double log2_amp2 = log_binomial(a, k).log2_value;
    if (k > 0) {
      if (eta == 0.0) { e.amplitudes[k] = 0.0; continue; }
      log2_amp2 += static_cast<double>(k) * std::log2(eta);
    }
    if (a - k > 0) {
      if (eta == 1.0) { e.amplitudes[k] = 0.0; continue; }
      log2_amp2 += static_cast<double>(a - k) * std::log2(1.0 - eta);
    }
    e.amplitudes[k] = std::exp2(log2_amp2 / 2.0);
  }
  return e;
}

std::complex<double> apply_to_coherent(std::complex<double> alpha,
                                       double eta) {
  return std::sqrt(eta) * alpha;
}

PhotonDistribution fock_loss_distribution(std::uint64_t a, double eta) {
  std::vector<double> pmf(a + 1, kNegInf);
  if (eta == 0.0) {
    pmf.assign(a + 1, kNegInf);
    pmf[0] = 0.0;
  } else if (eta == 1.0) {
    pmf[a] = 0.0;
  } else {
    double le = std::log2(eta), l1e = std::log2(1.0 - eta);
    for (std::uint64_t k = 0; k <= a; ++k)
      pmf[k] = log_binomial(a, k).log2_value + static_cast<double>(k) * le +
               static_cast<double>(a - k) * l1e;
  }
  return PhotonDistribution(std::move(pmf));
}

double binomial_cdf(std::uint64_t trials, double eta, std::int64_t threshold) {
  if (threshold < 0) return 0.0;
  std::uint64_t t = static_cast<std::uint64_t>(threshold);
  if (t >= trials) return 1.0;
  if (eta == 0.0) return 1.0;
  if (eta == 1.0) return 0.0;  // t < trials here
  double le = std::log2(eta), l1e = std::log2(1.0 - eta);
  auto term = [&](std::uint64_t k) {
    return std::exp2(log_binomial(trials, k).log2_value +
                     static_cast<double>(k) * le +
                     static_cast<double>(trials - k) * l1e);
  };
  // Sum whichever side has fewer terms.
  KahanSum s;
  if (t + 1 <= trials - t) {
    for (std::uint64_t k = 0; k <= t; ++k) s.add(term(k));
    return std::min(1.0, s.value());
  }
  for (std::uint64_t k = t + 1; k <= trials; ++k) s.add(term(k));
  return std::clamp(1.0 - s.value(), 0.0, 1.0);
}

double output_shadow_exact(const PhotonDistribution& input_total, double eta,
                           std::uint64_t l_out, ThinningConvention conv) {
  double thin = conv == ThinningConvention::transmitted_eta ? eta : 1.0 - eta;
  KahanSum s;
  for (std::uint64_t a = 0; a < input_total.support_size(); ++a) {
    double p = input_total.pmf(a);
    if (p == 0.0) continue;
    s.add(p * binomial_cdf(a, thin, static_cast<std::int64_t>(l_out)));
  }
  return std::min(1.0, s.value());
}

double output_shadow_exact(const std::vector<PhotonDistribution>& modes,
                           double eta, std::uint64_t l_out,
                           ThinningConvention conv) {
  if (modes.empty()) return 1.0;
  PhotonDistribution total = modes[0];
  for (std::size_t i = 1; i < modes.size(); ++i)
    total = convolve(total, modes[i]);
  return output_shadow_exact(total, eta, l_out, conv);
}

Lemma2Bound lemma2_output_shadow_bound(double delta1, double delta2,
                                       double delta3,
                                       const ChannelParams& params) {
  params.validate();
  if (delta1 < 0.0 || delta1 > 1.0)
    throw std::domain_error("lemma2: delta1 must lie in [0,1]");
  double n = static_cast<double>(params.n_modes);
  double input_cutoff = std::ceil(n * params.photon_budget);
  double d3_max = (n * delta2 - params.eta) / input_cutoff;
  if (!(delta3 > 0.0) || delta3 > d3_max) {
    throw std::domain_error(
        "lemma2: delta3 outside admissible interval (0, " +
        std::to_string(d3_max) + "]");
  }
  double raw = 1.0 - 2.0 * std::sqrt(delta1) - delta1 -
               std::exp(-2.0 * delta3 * delta3 * params.eta *
                        params.photon_budget * n);
  Lemma2Bound b;
  b.raw_lower_bound = raw;
  b.lower_bound = std::clamp(raw, 0.0, 1.0);
  b.output_cutoff = static_cast<std::uint64_t>(
      std::ceil(n * (params.eta * params.photon_budget + delta2)));
  b.delta3_max = d3_max;
  return b;
}

}  // namespace losslab
