#pragma once

// Closed-form rate and success-probability bounds: weak converse, the
// noiseless-qubit strong converse, the cutoff-projector rank bound, the
// strong converse theorem for the loss channel, and the achievable
// rate-error trade-off point.

#include <cstdint>
#include <map>
#include <string>

#include "losslab/channel.hpp"
#include "losslab/numerics.hpp"

namespace losslab {

struct ConverseSlack {
  double delta = 0.0;    // rank-bound slack in bits (0 = auto-derive)
  double delta1 = 0.0;   // input-shadow deficit
  double delta2 = 0.0;   // output cutoff slack
  double delta3 = 0.0;   // Hoeffding slack
  bool auto_delta = true;  // derive delta from (n, eta N_S + delta2)
};

struct CodeParams {
  double rate = 0.0;       // bits per mode
  double epsilon = 0.0;    // error probability
  double mix_weight = 0.0; // p
  double pre_mix_mean = 0.0;  // P

  static CodeParams from_messages(std::uint64_t messages, std::uint64_t n) {
    CodeParams c;
    c.rate = std::log2(static_cast<double>(messages)) /
             static_cast<double>(n);
    return c;
  }
};

// Structured term-by-term result; re-evaluation from the recorded inputs
// reproduces every value.
struct BoundReport {
  ChannelParams channel;
  CodeParams code;
  ConverseSlack slack;
  std::map<std::string, double> terms;
  double value = 0.0;       // clamped headline number
  double raw_value = 0.0;   // unclamped
  bool exponential_decay_regime = false;
};

// R <= [g(eta N_S) + h2(eps)] / (1 - eps).
double weak_converse_rate_bound(double epsilon, const ChannelParams& params);

// min(1, 2^{-n(R-1)}) for the noiseless qubit channel.
double qubit_strong_converse(double rate, std::uint64_t n);

struct Lemma1Result {
  BigInt exact_rank;
  double log2_exact_rank;
  double minimal_delta;     // (log2 e + log2(1 + 1/N_S)) / n
  double log2_bound;        // n (g(N_S) + minimal_delta)
};

// Exact rank C(ceil(n N_S)+n, n) against 2^{n(g(N_S)+delta_min)}.
Lemma1Result lemma1_rank_bound(std::uint64_t n, double photon_budget);

// The strong converse success-probability bound, both terms reported.
BoundReport strong_converse_success_bound(const CodeParams& code,
                                          const ChannelParams& params,
                                          const ConverseSlack& slack);

// Achievable (rate, error) pair (g(eta N_S / (1-p)), p).
struct TradeoffPoint {
  double rate;
  double error;
};
TradeoffPoint tradeoff_point(double p, const ChannelParams& params);

// Qubit rate needed to simulate the channel on the certified subspace.
double simulation_rate(const ChannelParams& params);

}  // namespace losslab
