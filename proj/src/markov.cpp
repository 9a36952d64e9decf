#include "tncalc/markov.hpp"

#include <algorithm>
#include <cmath>

namespace tnc {

MarkovChain::MarkovChain(MarkovConfig config) : config_(config), state_(1, 1.0) {}

void MarkovChain::step() {
  const double a = config_.alpha;
  const double b = config_.beta;
  const size_t n = state_.size();
  const bool serving = time_ >= config_.sleep_latency;

  size_t next_size = n + (a > 0.0 ? 1 : 0);
  if (next_size > static_cast<size_t>(config_.state_cap)) {
    // Only an error if truncation would actually lose mass.
    double top = state_.back();
    if (top > config_.tail_tol)
      throw std::runtime_error(
          "MarkovChain: state cap " + std::to_string(config_.state_cap) +
          " exceeded with tail mass above tail_tol; enlarge state_cap");
    next_size = n;
  }
  std::vector<double> next(next_size, 0.0);

  if (!serving) {
    // q_{i,i} = 1-alpha, q_{i,i+1} = alpha.
    for (size_t k = 0; k < n; ++k) {
      next[k] += (1.0 - a) * state_[k];
      if (k + 1 < next_size) next[k + 1] += a * state_[k];
    }
  } else {
    // q_{i,i-1} = (1-a)b, q_{i,i} = (1-a)(1-b)+ab, q_{i,i+1} = a(1-b);
    // state 0 has no departure, so its stay probability absorbs (1-a)b.
    const double down = (1.0 - a) * b;
    const double stay = (1.0 - a) * (1.0 - b) + a * b;
    const double up = a * (1.0 - b);
    next[0] += (stay + down) * state_[0];
    if (next_size > 1) next[1] += up * state_[0];
    for (size_t k = 1; k < n; ++k) {
      next[k - 1] += down * state_[k];
      next[k] += stay * state_[k];
      if (k + 1 < next_size) next[k + 1] += up * state_[k];
    }
  }

  // Drop a vanishing top cell to keep the support tight after the backlog
  // has drained.
  while (next.size() > 1 && next.back() < 1e-300) next.pop_back();

  state_ = std::move(next);
  ++time_;
}

void MarkovChain::step_to(int t) {
  if (t < time_) throw std::invalid_argument("MarkovChain::step_to: cannot step backwards");
  while (time_ < t) step();
}

std::vector<double> MarkovChain::backlog_distribution(int b_max) const {
  // P[B=b] = sum_k P[K=k] C(b-1,k-1) beta^k (1-beta)^{b-k}; P[B=0] = P[K=0].
  const double beta = config_.beta;
  const size_t K = state_.size();
  const double target = 1.0 - config_.tail_tol;

  std::vector<double> dist;
  dist.push_back(state_[0]);
  double mass = state_[0];

  // pmf[k] tracks P[B=b | K=k] for the current b via the ratio recurrence
  // pmf(b+1) = pmf(b) (1-beta) b / (b+1-k); initialized to beta^k at b = k.
  std::vector<double> pmf(K, 0.0);
  int b = 0;
  while ((b_max < 0 && mass < target) || (b_max >= 0 && b < b_max)) {
    ++b;
    // the k = b component enters the support at b
    if (static_cast<size_t>(b) < pmf.size())
      pmf[static_cast<size_t>(b)] = std::exp(b * std::log(beta));
    double pb = 0.0;
    size_t k_hi = std::min(static_cast<size_t>(b), K - 1);
    for (size_t k = 1; k <= k_hi; ++k) pb += state_[k] * pmf[k];
    dist.push_back(pb);
    mass += pb;
    // advance pmf to b+1
    for (size_t k = 1; k <= k_hi; ++k)
      pmf[k] *= (1.0 - beta) * static_cast<double>(b) / static_cast<double>(b + 1 - k);
    if (b_max < 0 && b > 100 && pb == 0.0 && mass < target - 1e-9)
      throw std::runtime_error("MarkovChain::backlog_distribution: mass leak in mixture");
  }
  return dist;
}

int MarkovChain::backlog_quantile(double epsilon) const {
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("backlog_quantile: epsilon must be in (0,1]");
  const double level = 1.0 - epsilon;
  const double beta = config_.beta;
  const size_t K = state_.size();

  double cdf = state_[0];
  if (cdf >= level) return 0;
  std::vector<double> pmf(K, 0.0);
  for (int b = 1;; ++b) {
    if (static_cast<size_t>(b) < pmf.size())
      pmf[static_cast<size_t>(b)] = std::exp(b * std::log(beta));
    double pb = 0.0;
    size_t k_hi = std::min(static_cast<size_t>(b), K - 1);
    for (size_t k = 1; k <= k_hi; ++k) pb += state_[k] * pmf[k];
    cdf += pb;
    if (cdf >= level) return b;
    for (size_t k = 1; k <= k_hi; ++k)
      pmf[k] *= (1.0 - beta) * static_cast<double>(b) / static_cast<double>(b + 1 - k);
    if (b > 1000000)
      throw std::runtime_error("backlog_quantile: quantile beyond 1e6, check parameters");
  }
}

std::vector<double> transient_state_distribution(const MarkovConfig& config, int t) {
  MarkovChain chain(config);
  chain.step_to(t);
  return chain.state_distribution();
}

std::vector<double> backlog_distribution(const MarkovConfig& config, int t) {
  MarkovChain chain(config);
  chain.step_to(t);
  return chain.backlog_distribution();
}

TimeSeries backlog_quantile_series(const MarkovConfig& config, double epsilon, TimeGrid grid) {
  MarkovChain chain(config);
  TimeSeries series(grid);
  series[0] = static_cast<double>(chain.backlog_quantile(epsilon));
  for (int t = 1; t <= grid.horizon; ++t) {
    chain.step();
    series[t] = static_cast<double>(chain.backlog_quantile(epsilon));
  }
  return series;
}

double stationary_state_pmf(const MarkovConfig& config, int k) {
  if (!(config.alpha < config.beta))
    throw std::invalid_argument("stationary_state_pmf: requires alpha < beta");
  double ratio = config.alpha * (1.0 - config.beta) / ((1.0 - config.alpha) * config.beta);
  return (config.beta - config.alpha) / (config.beta * (1.0 - config.alpha)) *
         std::pow(ratio, k);
}

}  // namespace tnc
