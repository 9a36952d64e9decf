#pragma once

#include "tncalc/grid.hpp"

namespace tnc {

/// Exact transient model of the deterministic-sleep discrete Poisson system:
/// state K(t) counts packets in the system, arrivals Bernoulli(alpha),
/// geometric(beta) packet sizes served at unit rate once the wake-up latency
/// T has passed.
struct MarkovConfig {
  double alpha;
  double beta;
  int sleep_latency;          // T
  int state_cap = 1 << 20;    // hard ceiling on the truncated state space
  double tail_tol = 1e-12;

  MarkovConfig(double alpha_, double beta_, int sleep_latency_)
      : alpha(alpha_), beta(beta_), sleep_latency(sleep_latency_) {
    if (alpha < 0.0 || alpha > 1.0)
      throw std::invalid_argument("MarkovConfig: alpha must be in [0,1]");
    if (beta <= 0.0 || beta > 1.0)
      throw std::invalid_argument("MarkovConfig: beta must be in (0,1]");
    if (sleep_latency < 0) throw std::invalid_argument("MarkovConfig: T must be >= 0");
  }
};

/// Steps the state recursion P(t) = Q(t) P(t-1) from the point mass at 0.
/// Pre-T the chain only counts arrivals (binomial state law); post-T the
/// tridiagonal service transitions apply. The support grows adaptively;
/// exceeding state_cap with tail mass above tail_tol is an error.
class MarkovChain {
 public:
  explicit MarkovChain(MarkovConfig config);

  void step();
  void step_to(int t);

  int time() const { return time_; }
  const std::vector<double>& state_distribution() const { return state_; }

  /// P[B(time) = b] for b = 0..b_max via the negative-binomial mixture over
  /// the state law. b_max = -1 extends until the captured mass reaches
  /// 1 - tail_tol.
  std::vector<double> backlog_distribution(int b_max = -1) const;

  /// Smallest b with P[B(time) <= b] >= 1 - epsilon.
  int backlog_quantile(double epsilon) const;

 private:
  MarkovConfig config_;
  std::vector<double> state_;
  int time_ = 0;
};

std::vector<double> transient_state_distribution(const MarkovConfig& config, int t);
std::vector<double> backlog_distribution(const MarkovConfig& config, int t);

/// Exact (1-epsilon)-quantile of the backlog for t = 0..horizon.
TimeSeries backlog_quantile_series(const MarkovConfig& config, double epsilon, TimeGrid grid);

/// Stationary law P[K = k] = (beta-alpha)/(beta(1-alpha)) * (alpha(1-beta)/((1-alpha)beta))^k
/// reached for t -> infinity (requires alpha < beta).
double stationary_state_pmf(const MarkovConfig& config, int k);

}  // namespace tnc
