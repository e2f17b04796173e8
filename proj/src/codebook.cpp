#include "losslab/codebook.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "losslab/rng.hpp"

#include "json.hpp"

namespace losslab {

double SuperpositionCodeword::norm_squared() const {
  // |gamma> = sqrt(1-p)|alpha^n>|0> + sqrt(p)|0^n>|1>. The cross term
  // carries <0^n|alpha^n><1|0> = overlap * 0.
  double overlap = std::exp(-0.5 * base.total_mean_photon());
  double cross = 2.0 * std::sqrt((1.0 - weight) * weight) * overlap * 0.0;
  return (1.0 - weight) + weight + cross;
}

std::vector<CoherentCodeword> sample_codebook(std::uint64_t messages,
                                              const GaussianEnsemble& ens) {
  if (messages < 1)
    throw std::domain_error("sample_codebook: messages must be >= 1");
  if (ens.variance < 0.0)
    throw std::domain_error("sample_codebook: variance must be >= 0");
  std::vector<CoherentCodeword> book(messages);
  for (std::uint64_t m = 0; m < messages; ++m) {
    auto& cw = book[m];
    cw.amplitudes.resize(ens.n_modes);
    KeyedRng rng(ens.seed, m);
    for (std::uint64_t i = 0; i < ens.n_modes; ++i) {
      // |alpha|^2 ~ Exp(variance), phase uniform: circularly symmetric
      // complex Gaussian with per-component variance variance/2.
      double u1 = rng.uniform(2 * i);
      double u2 = rng.uniform(2 * i + 1);
      double r = std::sqrt(-ens.variance * std::log(u1));
      double phi = 2.0 * std::numbers::pi * u2;
      cw.amplitudes[i] = std::polar(r, phi);
    }
  }
  return book;
}

double mixture_mean_photon(double p, double pre_mix_mean) {
  if (p < 0.0 || p > 1.0 || pre_mix_mean < 0.0)
    throw std::domain_error("mixture_mean_photon: 0 <= p <= 1, P >= 0");
  return (1.0 - p) * pre_mix_mean;
}

double superposition_mean_photon(double p, double pre_mix_mean,
                                 std::uint64_t n_modes) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("superposition_mean_photon: 0 <= p <= 1");
  double n = static_cast<double>(n_modes);
  return ((1.0 - p) * n * pre_mix_mean + p) / (n + 1.0);
}

double superposition_weight_for_target(double target, double pre_mix_mean,
                                       std::uint64_t n_modes) {
  // Linear in p between p=0 -> nP/(n+1) and p=1 -> 1/(n+1).
  double at0 = superposition_mean_photon(0.0, pre_mix_mean, n_modes);
  double at1 = superposition_mean_photon(1.0, pre_mix_mean, n_modes);
  double lo = std::min(at0, at1), hi = std::max(at0, at1);
  if (target < lo || target > hi)
    throw std::domain_error(
        "superposition_weight_for_target: target outside feasible interval "
        "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (at1 == at0) return 0.0;
  return (target - at0) / (at1 - at0);
}

double codeword_shadow(const CoherentCodeword& cw, std::uint64_t cutoff) {
  // Total photon number of a coherent product state is exactly Poisson.
  return poisson_cdf(cw.total_mean_photon(), cutoff);
}

double codeword_shadow(const MixtureCodeword& cw, std::uint64_t cutoff) {
  return (1.0 - cw.vacuum_weight) * codeword_shadow(cw.base, cutoff) +
         cw.vacuum_weight;
}

E1Audit audit_constraint_E1(const std::vector<CoherentCodeword>& codebook,
                            std::uint64_t cutoff, double delta1,
                            double per_mode_budget) {
  E1Audit audit;
  if (codebook.empty()) {
    audit.pass = true;
    audit.average_shadow = 1.0;
    return audit;
  }
  KahanSum avg;
  for (std::size_t m = 0; m < codebook.size(); ++m) {
    double s = codeword_shadow(codebook[m], cutoff);
    avg.add(s);
    if (s < audit.worst_shadow) {
      audit.worst_shadow = s;
      audit.worst_index = m;
    }
    if (per_mode_budget >= 0.0 &&
        codebook[m].mean_photon_per_mode() > per_mode_budget)
      ++audit.budget_violations;
  }
  audit.average_shadow = avg.value() / static_cast<double>(codebook.size());
  audit.pass = audit.average_shadow >= 1.0 - delta1;
  return audit;
}

std::vector<CoherentCodeword> expurgate(
    const std::vector<CoherentCodeword>& codebook, double per_mode_budget) {
  std::vector<CoherentCodeword> kept;
  kept.reserve(codebook.size());
  for (const auto& cw : codebook)
    if (cw.mean_photon_per_mode() <= per_mode_budget) kept.push_back(cw);
  return kept;
}

void write_codebook_csv(std::ostream& os,
                        const std::vector<CoherentCodeword>& codebook) {
  os << "message_index,mode_index,re_alpha,im_alpha\n";
  char buf[128];
  for (std::size_t m = 0; m < codebook.size(); ++m) {
    const auto& amps = codebook[m].amplitudes;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", m, i,
                    amps[i].real(), amps[i].imag());
      os << buf;
    }
  }
}

void write_codebook_header_json(std::ostream& os, const GaussianEnsemble& ens,
                                std::uint64_t messages) {
  nlohmann::json j;
  j["seed"] = ens.seed;
  j["variance"] = ens.variance;
  j["n"] = ens.n_modes;
  j["M"] = messages;
  os << j.dump(2) << "\n";
}

}  // namespace losslab
