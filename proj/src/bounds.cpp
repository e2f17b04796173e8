#include "losslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "losslab/fock.hpp"

namespace losslab {

double weak_converse_rate_bound(double epsilon, const ChannelParams& params) {
  params.validate();
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::domain_error(
        "weak_converse_rate_bound: epsilon must lie in [0,1); the bound "
        "diverges at 1");
  double g = g_entropy(params.eta * params.photon_budget);
  return (g + binary_entropy(epsilon)) / (1.0 - epsilon);
}

double qubit_strong_converse(double rate, std::uint64_t n) {
  if (rate < 0.0 || n < 1)
    throw std::domain_error("qubit_strong_converse: R >= 0, n >= 1");
  return std::min(1.0, std::exp2(-static_cast<double>(n) * (rate - 1.0)));
}

Lemma1Result lemma1_rank_bound(std::uint64_t n, double photon_budget) {
  if (n < 1 || photon_budget <= 0.0)
    throw std::domain_error("lemma1_rank_bound: n >= 1, N_S > 0");
  auto cutoff = static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(n) * photon_budget));
  Lemma1Result r;
  r.exact_rank = projector_rank(n, cutoff);
  r.log2_exact_rank = log2_bigint(r.exact_rank);
  r.minimal_delta =
      (kLog2E + std::log2(1.0 + 1.0 / photon_budget)) / static_cast<double>(n);
  r.log2_bound =
      static_cast<double>(n) * (g_entropy(photon_budget) + r.minimal_delta);
  if (r.log2_exact_rank > r.log2_bound + 1e-9)
    throw std::logic_error(
        "lemma1_rank_bound: rank exceeds the guaranteed bound (arithmetic "
        "bug)");
  return r;
}

BoundReport strong_converse_success_bound(const CodeParams& code,
                                          const ChannelParams& params,
                                          const ConverseSlack& slack_in) {
  params.validate();
  ConverseSlack slack = slack_in;
  double n = static_cast<double>(params.n_modes);
  double g_eta_ns = g_entropy(params.eta * params.photon_budget);

  // The rank-bound slack is evaluated at the output cutoff budget
  // eta N_S + delta2 unless the caller supplies one. The variant at
  // eta N_S alone is reported alongside.
  double budget_ctx = params.eta * params.photon_budget + slack.delta2;
  double delta_at_ctx =
      (kLog2E + std::log2(1.0 + 1.0 / budget_ctx)) / n;
  double delta_at_eta_ns =
      params.eta * params.photon_budget > 0.0
          ? (kLog2E + std::log2(1.0 + 1.0 /
                                (params.eta * params.photon_budget))) / n
          : std::numeric_limits<double>::infinity();
  if (slack.auto_delta) slack.delta = delta_at_ctx;

  // Admissibility of delta3 (same constraint as the output-shadow lemma).
  double input_cutoff = std::ceil(n * params.photon_budget);
  double d3_max = (n * slack.delta2 - params.eta) / input_cutoff;
  if (!(slack.delta3 > 0.0) || slack.delta3 > d3_max)
    throw std::domain_error(
        "strong_converse_success_bound: delta3 outside admissible interval "
        "(0, " + std::to_string(d3_max) + "]");
  if (slack.delta1 < 0.0 || slack.delta1 > 1.0)
    throw std::domain_error(
        "strong_converse_success_bound: delta1 must lie in [0,1]");

  double gap = code.rate - g_eta_ns - slack.delta2 - slack.delta;
  double term1 = std::exp2(-n * gap);
  double exp_term = std::exp(-2.0 * slack.delta3 * slack.delta3 * params.eta *
                             params.photon_budget * n);
  double term2 =
      2.0 * std::sqrt(slack.delta1 + exp_term + 2.0 * std::sqrt(slack.delta1));

  BoundReport rep;
  rep.channel = params;
  rep.code = code;
  rep.slack = slack;
  rep.terms["g_eta_ns"] = g_eta_ns;
  rep.terms["delta"] = slack.delta;
  rep.terms["delta_at_eta_ns"] = delta_at_eta_ns;
  rep.terms["rate_gap"] = gap;
  rep.terms["term1_projection"] = term1;
  rep.terms["term2_gentle"] = term2;
  rep.terms["exp_term"] = exp_term;
  rep.raw_value = term1 + term2;
  rep.value = std::clamp(rep.raw_value, 0.0, 1.0);
  rep.exponential_decay_regime = gap > 0.0;
  return rep;
}

TradeoffPoint tradeoff_point(double p, const ChannelParams& params) {
  params.validate();
  if (p < 0.0 || p >= 1.0)
    throw std::domain_error(
        "tradeoff_point: p must lie in [0,1); the rate diverges at 1");
  return TradeoffPoint{
      g_entropy(params.eta * params.photon_budget / (1.0 - p)), p};
}

double simulation_rate(const ChannelParams& params) {
  params.validate();
  return g_entropy(params.eta * params.photon_budget);
}

}  // namespace losslab
