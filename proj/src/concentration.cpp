#include "losslab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "losslab/channel.hpp"
#include "losslab/rng.hpp"

namespace losslab {

double binomial_tail_below(const BinomialTransmission& dist,
                           std::int64_t threshold) {
  return binomial_cdf(dist.trials, dist.eta, threshold);
}

double hoeffding_lower_bound(std::uint64_t trials, double delta3) {
  if (delta3 <= 0.0) throw std::domain_error("hoeffding: delta3 must be > 0");
  if (trials == 0) return 0.0;
  return 1.0 - std::exp(-2.0 * delta3 * delta3 *
                        static_cast<double>(trials));
}

namespace {

double nb_log2_pmf(std::uint64_t k, std::uint64_t n, double log2_p,
                   double log2_1mp) {
  // pmf(k) = C(k+n-1, n-1) p^k (1-p)^n
  return log_binomial(k + n - 1, n - 1).log2_value +
         static_cast<double>(k) * log2_p + static_cast<double>(n) * log2_1mp;
}

}  // namespace

double negative_binomial_tail(const GeometricLaw& law, std::uint64_t n,
                              std::uint64_t threshold) {
  if (law.p <= 0.0) return threshold == 0 ? 1.0 : 0.0;
  if (law.p >= 1.0) throw std::domain_error("negative_binomial_tail: p >= 1");
  if (threshold == 0) return 1.0;
  double log2_p = std::log2(law.p), log2_1mp = std::log2(1.0 - law.p);
  double mean = static_cast<double>(n) * law.mean();
  KahanSum s;
  if (static_cast<double>(threshold) <= mean) {
    // Complement side has fewer significant terms.
    for (std::uint64_t k = 0; k < threshold; ++k)
      s.add(std::exp2(nb_log2_pmf(k, n, log2_p, log2_1mp)));
    return std::clamp(1.0 - s.value(), 0.0, 1.0);
  }
  // Direct summation; terms eventually decay geometrically at ratio -> p.
  double peak = kNegInf;
  for (std::uint64_t k = threshold;; ++k) {
    double lp = nb_log2_pmf(k, n, log2_p, log2_1mp);
    peak = std::max(peak, lp);
    s.add(std::exp2(lp));
    if (lp < peak - 120.0 && k > threshold + n) break;
    if (k > threshold + 100000000) break;
  }
  return std::min(1.0, s.value());
}

double geometric_sum_tail_above(const GeometricLaw& law, std::uint64_t n,
                                double delta) {
  if (n < 1) throw std::domain_error("geometric_sum_tail_above: n >= 1");
  if (delta <= 0.0)
    throw std::domain_error("geometric_sum_tail_above: delta must be > 0");
  double t = std::ceil(static_cast<double>(n) * (law.mean() + delta));
  return negative_binomial_tail(law, n, static_cast<std::uint64_t>(t));
}

ChernoffOptimum chernoff_constant(double delta, double p) {
  if (delta <= 0.0)
    throw std::domain_error("chernoff_constant: delta must be > 0");
  if (p <= 0.0 || p >= 1.0)
    throw std::domain_error("chernoff_constant: p must lie in (0,1)");
  double m = p / (1.0 - p) + delta;  // mu + delta
  auto log_f = [&](double x) {
    return std::log(1.0 - p) - std::log(1.0 - p * x) - m * std::log(x);
  };
  // Golden-section on (1, 1/p); log f is unimodal on the bracket.
  double lo = 1.0 + 1e-9, hi = 1.0 / p - 1e-9;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = log_f(a), fb = log_f(b);
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    if (fa < fb) {
      hi = b; b = a; fb = fa;
      a = hi - gr * (hi - lo); fa = log_f(a);
    } else {
      lo = a; a = b; fa = fb;
      b = lo + gr * (hi - lo); fb = log_f(b);
    }
  }
  ChernoffOptimum opt;
  opt.x_star = 0.5 * (lo + hi);
  opt.t_star = std::log(opt.x_star);
  opt.constant = std::exp(log_f(opt.x_star));
  opt.hit_boundary = opt.x_star > 1.0 / p - 1e-6;
  // Stationarity check: f'(x*)/f(x*) = p/(1-px) - m/x, judged against the
  // scale of the two terms (steep near p -> 1).
  double deriv = p / (1.0 - p * opt.x_star) - m / opt.x_star;
  double scale = std::max(1.0, p / (1.0 - p * opt.x_star) + m / opt.x_star);
  if (!opt.hit_boundary && std::abs(deriv) > 1e-6 * scale)
    throw std::logic_error("chernoff_constant: stationarity check failed");
  return opt;
}

TailEstimate monte_carlo_geometric_tail(const GeometricLaw& law,
                                        std::uint64_t n,
                                        std::uint64_t threshold,
                                        std::uint64_t samples,
                                        std::uint64_t seed) {
  if (samples < 1)
    throw std::domain_error("monte_carlo: samples must be >= 1");
  KeyedRng rng(seed, /*stream_a=*/0x67656f6dULL);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      total += rng.geometric(s * n + i, law.p);
    if (total >= threshold) ++hits;
  }
  double est = static_cast<double>(hits) / static_cast<double>(samples);
  double se = std::sqrt(est * (1.0 - est) / static_cast<double>(samples));
  return TailEstimate{est, se, samples};
}

TailEstimate monte_carlo_binomial_below(const BinomialTransmission& dist,
                                        std::int64_t threshold,
                                        std::uint64_t samples,
                                        std::uint64_t seed) {
  if (samples < 1)
    throw std::domain_error("monte_carlo: samples must be >= 1");
  KeyedRng rng(seed, /*stream_a=*/0x62696e6fULL);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < dist.trials; ++i)
      if (rng.bernoulli(s * dist.trials + i, dist.eta)) ++k;
    if (static_cast<std::int64_t>(k) <= threshold) ++hits;
  }
  double est = static_cast<double>(hits) / static_cast<double>(samples);
  double se = std::sqrt(est * (1.0 - est) / static_cast<double>(samples));
  return TailEstimate{est, se, samples};
}

}  // namespace losslab
