#pragma once

// Coherent-state codebooks sampled from a circularly symmetric Gaussian,
// the vacuum-mixture and single-photon-flag superposition constructions,
// their photon statistics, and the codebook shadow audit.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "losslab/fock.hpp"

namespace losslab {

struct GaussianEnsemble {
  double variance;        // per-mode E|alpha|^2
  std::uint64_t n_modes;
  std::uint64_t seed;
};

struct CoherentCodeword {
  std::vector<std::complex<double>> amplitudes;

  double total_mean_photon() const {
    KahanSum s;
    for (auto a : amplitudes) s.add(std::norm(a));
    return s.value();
  }
  double mean_photon_per_mode() const {
    return amplitudes.empty()
               ? 0.0
               : total_mean_photon() / static_cast<double>(amplitudes.size());
  }
};

struct MixtureCodeword {
  CoherentCodeword base;
  double vacuum_weight;  // p

  double mean_photon_per_mode() const {
    return (1.0 - vacuum_weight) * base.mean_photon_per_mode();
  }
};

struct SuperpositionCodeword {
  CoherentCodeword base;
  double weight;  // p on the flag branch

  // Norm including the <0|alpha^n> cross-term overlap; the flag-mode
  // orthogonality makes the cross terms vanish, so this is exactly 1.
  double norm_squared() const;
};

// Deterministic given the ensemble seed; draw (m, i) depends only on
// (seed, m, i), independent of sampling order.
std::vector<CoherentCodeword> sample_codebook(std::uint64_t messages,
                                              const GaussianEnsemble& ens);

// (1-p) P, the mixture codeword's mean photon number per mode.
double mixture_mean_photon(double p, double pre_mix_mean);

// ((1-p) n P + p) / (n+1) over the n+1 modes of the superposition.
double superposition_mean_photon(double p, double pre_mix_mean,
                                 std::uint64_t n_modes);

// Solve superposition_mean_photon(p, P, n) = target for p.
double superposition_weight_for_target(double target, double pre_mix_mean,
                                       std::uint64_t n_modes);

// Tr{Pi_L rho}: Poisson CDF with mean sum |alpha_i|^2 for a coherent
// product codeword; the mixture adds the vacuum branch at weight p.
double codeword_shadow(const CoherentCodeword& cw, std::uint64_t cutoff);
double codeword_shadow(const MixtureCodeword& cw, std::uint64_t cutoff);

struct E1Audit {
  bool pass = false;
  double average_shadow = 0.0;
  double worst_shadow = 1.0;
  std::size_t worst_index = 0;
  std::size_t budget_violations = 0;  // codewords above the per-mode budget
};

// Exact average-shadow audit of the cutoff constraint.
E1Audit audit_constraint_E1(const std::vector<CoherentCodeword>& codebook,
                            std::uint64_t cutoff, double delta1,
                            double per_mode_budget = -1.0);

// Optional expurgation: drop codewords whose per-mode mean photon number
// exceeds the budget. Default workflow is report-only.
std::vector<CoherentCodeword> expurgate(
    const std::vector<CoherentCodeword>& codebook, double per_mode_budget);

// Columnar CSV (message_index, mode_index, re_alpha, im_alpha).
void write_codebook_csv(std::ostream& os,
                        const std::vector<CoherentCodeword>& codebook);
// JSON header {seed, variance, n, M}.
void write_codebook_header_json(std::ostream& os, const GaussianEnsemble& ens,
                                std::uint64_t messages);

}  // namespace losslab
