#pragma once

// The pure-loss bosonic channel of transmissivity eta: action on coherent
// states, Fock states, and total-photon distributions, plus the
// output-shadow lower bound used by the strong converse.

#include <complex>
#include <cstdint>
#include <vector>

#include "losslab/fock.hpp"

namespace losslab {

struct ChannelParams {
  double eta;           // transmissivity in [0,1]
  std::uint64_t n_modes;
  double photon_budget;  // N_S

  void validate() const;
};

// Exponent placement for the binomial thinning weights. `transmitted_eta`
// is the physical convention (a transmitted photon carries probability
// eta); `swapped` tabulates the eta <-> 1-eta transcription for comparison.
enum class ThinningConvention { transmitted_eta, swapped };

// Beamsplitter action on |a>|0>: amplitude(k) = sqrt(C(a,k)) eta^(k/2)
// (1-eta)^((a-k)/2) on the transmitted count k.
struct BeamsplitterExpansion {
  std::uint64_t input_photons;
  std::vector<double> amplitudes;

  static BeamsplitterExpansion make(std::uint64_t input_photons, double eta);
};

// Coherent states stay coherent: alpha -> sqrt(eta) alpha.
std::complex<double> apply_to_coherent(std::complex<double> alpha, double eta);

// Transmitted photon count for a Fock input: Binomial(a, eta).
PhotonDistribution fock_loss_distribution(std::uint64_t input_photons,
                                          double eta);

// Exact binomial CDF Pr{Bin(trials, eta) <= threshold}, log-space terms.
double binomial_cdf(std::uint64_t trials, double eta, std::int64_t threshold);

// Exact output shadow Tr{Pi_L N^n(rho)} for a number-diagonal input,
// given the input's total-photon distribution.
double output_shadow_exact(
    const PhotonDistribution& input_total, double eta, std::uint64_t l_out,
    ThinningConvention conv = ThinningConvention::transmitted_eta);

// Per-mode product-state overload.
double output_shadow_exact(
    const std::vector<PhotonDistribution>& modes, double eta,
    std::uint64_t l_out,
    ThinningConvention conv = ThinningConvention::transmitted_eta);

struct Lemma2Bound {
  double lower_bound;        // clamped into [0,1]
  double raw_lower_bound;    // unclamped value
  std::uint64_t output_cutoff;  // ceil(n (eta N_S + delta2))
  double delta3_max;         // admissible upper end for delta3
};

// Output-shadow lower bound
//   1 - 2 sqrt(d1) - d1 - exp(-2 d3^2 eta N_S n)
// valid when the input shadow at ceil(n N_S) is >= 1 - d1 and
// 0 < d3 <= (n d2 - eta) / ceil(n N_S).
Lemma2Bound lemma2_output_shadow_bound(double delta1, double delta2,
                                       double delta3,
                                       const ChannelParams& params);

}  // namespace losslab
