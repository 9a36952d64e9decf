#include "tncalc/service.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tnc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(1 - e^x) for x <= 0.
double log1mexp(double x) {
  if (x > 0.0) throw std::invalid_argument("log1mexp: x must be <= 0");
  if (x == 0.0) return kNegInf;
  if (x < -0.6931471805599453) return std::log1p(-std::exp(x));
  return std::log(-std::expm1(x));
}

double logsumexp3(double a, double b, double c) {
  double m = std::max({a, b, c});
  if (m == kNegInf) return kNegInf;
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

/// ln( sum_{k=0}^{n-1} y^k ) given ln y; stable for y below, at, and above 1.
double log_geom_sum(double log_y, int n) {
  if (n <= 0) return kNegInf;
  if (log_y == kNegInf) return 0.0;  // only the k=0 term survives
  double nlog = static_cast<double>(n) * log_y;
  if (std::abs(nlog) < 1e-10)  // second-order expansion around y = 1
    return std::log(static_cast<double>(n)) + 0.5 * (n - 1) * log_y;
  if (log_y < 0.0) return log1mexp(nlog) - log1mexp(log_y);
  return nlog + log1mexp(-nlog) - (log_y + log1mexp(-log_y));
}

}  // namespace

SleepServiceModel SleepServiceModel::deterministic(int latency, double rate) {
  if (latency < 0) throw std::invalid_argument("SleepServiceModel: latency must be >= 0");
  if (rate < 0.0) throw std::invalid_argument("SleepServiceModel: rate must be >= 0");
  return {DeterministicWakeup{latency}, ConstantRateIncrement{rate}};
}

SleepServiceModel SleepServiceModel::geometric(double p, double q) {
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("SleepServiceModel: p must be in (0,1]");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("SleepServiceModel: q must be in [0,1]");
  return {GeometricWakeup{p}, BernoulliIncrement{q}};
}

SleepServiceModel SleepServiceModel::geometric_constant_rate(double p, double rate) {
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("SleepServiceModel: p must be in (0,1]");
  if (rate < 0.0) throw std::invalid_argument("SleepServiceModel: rate must be >= 0");
  return {GeometricWakeup{p}, ConstantRateIncrement{rate}};
}

SleepServiceModel SleepServiceModel::deterministic_bernoulli(int latency, double q) {
  if (latency < 0) throw std::invalid_argument("SleepServiceModel: latency must be >= 0");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("SleepServiceModel: q must be in [0,1]");
  return {DeterministicWakeup{latency}, BernoulliIncrement{q}};
}

std::vector<double> sample_service_cumulative(const SleepServiceModel& model, TimeGrid grid,
                                              Rng& rng) {
  int wake;
  if (const auto* d = std::get_if<DeterministicWakeup>(&model.wakeup))
    wake = d->latency;
  else
    wake = rng.geometric_from_zero(std::get<GeometricWakeup>(model.wakeup).p);

  std::vector<double> c(static_cast<size_t>(grid.points()));
  c[0] = 0.0;
  double acc = 0.0;
  for (int v = 1; v <= grid.horizon; ++v) {
    if (v > wake) {
      if (const auto* r = std::get_if<ConstantRateIncrement>(&model.increment))
        acc += r->rate;
      else if (rng.bernoulli(std::get<BernoulliIncrement>(model.increment).q))
        acc += 1.0;
    }
    c[static_cast<size_t>(v)] = acc;
  }
  return c;
}

BivariateFunction sample_service_path(const SleepServiceModel& model, TimeGrid grid,
                                      uint64_t seed) {
  Rng rng(seed);
  return BivariateFunction::from_cumulative(grid, sample_service_cumulative(model, grid, rng));
}

double log_mgf_usable_slots(const GeometricWakeup& wakeup, double theta, int tau, int t) {
  if (tau < 0 || tau > t) throw std::invalid_argument("log_mgf_usable_slots: need 0 <= tau <= t");
  const double p = wakeup.p;
  const double lq = p < 1.0 ? std::log1p(-p) : kNegInf;  // ln(1-p)

  // T <= tau: full window t-tau usable.
  double term1 = theta * (t - tau) + log1mexp((tau + 1) * lq);
  // T = v inside (tau, t]: geometric series in y = e^{-theta} (1-p).
  double term2;
  int n = t - tau;
  if (n == 0 || p == 0.0) {
    term2 = kNegInf;
  } else {
    double log_y = -theta + lq;
    term2 = std::log(p) + theta * t + (tau + 1) * log_y + log_geom_sum(log_y, n);
  }
  // T > t: no usable slot.
  double term3 = (t + 1) * lq;

  return logsumexp3(term1, term2, term3);
}

double mgf_usable_slots(const SleepServiceModel& model, double theta, int tau, int t) {
  const auto* g = std::get_if<GeometricWakeup>(&model.wakeup);
  if (!g) throw std::invalid_argument("mgf_usable_slots: requires geometric wake-up");
  return std::exp(log_mgf_usable_slots(*g, theta, tau, t));
}

double log_mgf_service(const SleepServiceModel& model, double theta, int tau, int t) {
  const auto* g = std::get_if<GeometricWakeup>(&model.wakeup);
  if (!g) throw std::invalid_argument("log_mgf_service: requires geometric wake-up");
  const auto* b = std::get_if<BernoulliIncrement>(&model.increment);
  if (!b) throw std::invalid_argument("log_mgf_service: requires Bernoulli increments");
  // ln M_Z(theta) = ln(q e^theta + 1 - q), evaluated stably for both signs.
  double log_mz;
  if (b->q == 0.0)
    log_mz = 0.0;
  else if (theta >= 0.0)
    log_mz = theta + std::log(b->q + (1.0 - b->q) * std::exp(-theta));
  else
    log_mz = std::log(b->q * std::exp(theta) + 1.0 - b->q);
  return log_mgf_usable_slots(*g, log_mz, tau, t);
}

double mgf_service(const SleepServiceModel& model, double theta, int tau, int t) {
  return std::exp(log_mgf_service(model, theta, tau, t));
}

namespace {

/// Curve value at one cell for a fixed theta; any theta > 0 is valid, so the
/// cell maximizes over theta.
double curve_value(const SleepServiceModel& model, double theta, int tau, int t, double rho,
                   double log_rho_eps) {
  double lm = log_mgf_service(model, -theta, tau, t);
  return -(lm + rho * (t - tau) - log_rho_eps) / theta;
}

double optimize_cell(const SleepServiceModel& model, int tau, int t, double rho,
                     double log_rho_eps, const std::vector<double>& theta_grid) {
  double best = -std::numeric_limits<double>::infinity();
  size_t best_i = 0;
  for (size_t i = 0; i < theta_grid.size(); ++i) {
    double v = curve_value(model, theta_grid[i], tau, t, rho, log_rho_eps);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best <= 0.0) return best;  // clamped anyway; skip refinement
  // Golden-section refinement between the neighbors of the grid maximum.
  double a = theta_grid[best_i > 0 ? best_i - 1 : 0];
  double b = theta_grid[std::min(best_i + 1, theta_grid.size() - 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = curve_value(model, x1, tau, t, rho, log_rho_eps);
  double f2 = curve_value(model, x2, tau, t, rho, log_rho_eps);
  for (int it = 0; it < 40 && (b - a) > 1e-10 * b; ++it) {
    if (f1 > f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = curve_value(model, x1, tau, t, rho, log_rho_eps);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = curve_value(model, x2, tau, t, rho, log_rho_eps);
    }
  }
  return std::max(best, std::max(f1, f2));
}

BivariateFunction curve_for_rho(const SleepServiceModel& model, TimeGrid grid, double rho,
                                double epsilon, const std::vector<double>& theta_grid) {
  BivariateFunction curve(grid);
  const double log_rho_eps = std::log(rho * epsilon);
  for (int tau = 0; tau <= grid.horizon; ++tau)
    for (int t = tau + 1; t <= grid.horizon; ++t)
      curve.set(tau, t,
                std::max(0.0, optimize_cell(model, tau, t, rho, log_rho_eps, theta_grid)));
  return curve;
}

}  // namespace

BivariateFunction nonstationary_service_curve(const SleepServiceModel& model, TimeGrid grid,
                                              const ServiceCurveParams& params) {
  if (params.epsilon <= 0.0 || params.epsilon > 1.0)
    throw std::invalid_argument("nonstationary_service_curve: epsilon must be in (0,1]");
  if (params.rho && (*params.rho <= 0.0 || *params.rho > 1.0 / params.epsilon))
    throw std::invalid_argument("nonstationary_service_curve: rho must be in (0, 1/epsilon]");
  if (params.theta_grid_points < 2)
    throw std::invalid_argument("nonstationary_service_curve: need >= 2 theta grid points");

  std::vector<double> theta_grid(static_cast<size_t>(params.theta_grid_points));
  for (int i = 0; i < params.theta_grid_points; ++i)
    theta_grid[static_cast<size_t>(i)] =
        params.theta_min * std::pow(params.theta_max / params.theta_min,
                                    static_cast<double>(i) / (params.theta_grid_points - 1));

  if (params.rho) return curve_for_rho(model, grid, *params.rho, params.epsilon, theta_grid);

  // rho selected per curve: the decade in {1e-6..1e-1} (capped at 1/eps)
  // whose clamped curve has the largest mass.
  double best_mass = -1.0;
  std::optional<BivariateFunction> best;
  for (int d = -6; d <= -1; ++d) {
    double rho = std::pow(10.0, d);
    if (rho > 1.0 / params.epsilon) break;
    BivariateFunction c = curve_for_rho(model, grid, rho, params.epsilon, theta_grid);
    double mass = 0.0;
    for (double v : c.raw()) mass += v;
    if (mass > best_mass) {
      best_mass = mass;
      best = std::move(c);
    }
  }
  return *best;
}

namespace {

/// Smallest x >= 0 with P[S(tau,t) <= x] >= level for the wake-up/Bernoulli
/// mixture: S | T ~ Binomial(t - max(tau,T), q), T geometric(p).
int mixture_quantile(double p, double q, int tau, int t, double level) {
  if (level <= 0.0 || tau >= t) return 0;
  const int n_max = t - tau;
  // Components (trials n, weight w): T <= tau gives n_max; each T = v in
  // (tau, t) gives t - v; T >= t gives zero trials.
  std::vector<int> trials;
  std::vector<double> weight;
  trials.push_back(n_max);
  weight.push_back(p < 1.0 ? -std::expm1((tau + 1) * std::log1p(-p)) : 1.0);
  if (p < 1.0) {
    double w = p * std::exp((tau + 1) * std::log1p(-p));  // P[T = tau+1]
    for (int v = tau + 1; v <= t - 1; ++v) {
      trials.push_back(t - v);
      weight.push_back(w);
      w *= 1.0 - p;
    }
    trials.push_back(0);
    weight.push_back(std::exp(t * std::log1p(-p)));  // P[T >= t]
  }

  if (q <= 0.0) return 0;
  if (q >= 1.0) {
    // Binomial(n,1) is a point mass at n.
    double cdf = 0.0;
    for (int x = 0; x <= n_max; ++x) {
      for (size_t j = 0; j < trials.size(); ++j)
        if (trials[j] == x) cdf += weight[j];
      if (cdf >= level) return x;
    }
    return n_max;
  }

  // Incremental binomial pmf per component.
  std::vector<double> pmf(trials.size());
  for (size_t j = 0; j < trials.size(); ++j)
    pmf[j] = std::exp(trials[j] * std::log1p(-q));
  double cdf = 0.0;
  const double odds = q / (1.0 - q);
  for (int x = 0;; ++x) {
    for (size_t j = 0; j < trials.size(); ++j) cdf += weight[j] * pmf[j];
    if (cdf >= level || x >= n_max) return x;
    for (size_t j = 0; j < trials.size(); ++j)
      pmf[j] = x < trials[j] ? pmf[j] * odds * (trials[j] - x) / (x + 1) : 0.0;
  }
}

void require_geometric_bernoulli(const SleepServiceModel& model, const char* op) {
  if (!model.has_geometric_wakeup() || !model.has_bernoulli_increment())
    throw std::invalid_argument(std::string(op) +
                                ": requires geometric wake-up and Bernoulli increments");
}

}  // namespace

std::vector<double> analytical_upper_bound(const SleepServiceModel& model, double epsilon,
                                           int t) {
  require_geometric_bernoulli(model, "analytical_upper_bound");
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("analytical_upper_bound: epsilon must be in (0,1]");
  if (t < 0) throw std::invalid_argument("analytical_upper_bound: t must be >= 0");
  const double p = std::get<GeometricWakeup>(model.wakeup).p;
  const double q = std::get<BernoulliIncrement>(model.increment).q;
  std::vector<double> out(static_cast<size_t>(t) + 1);
  for (int tau = 0; tau <= t; ++tau)
    out[static_cast<size_t>(tau)] = mixture_quantile(p, q, tau, t, 1.0 - epsilon);
  return out;
}

std::vector<double> analytical_reference_curve(const SleepServiceModel& model, double epsilon,
                                               int t) {
  require_geometric_bernoulli(model, "analytical_reference_curve");
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("analytical_reference_curve: epsilon must be in (0,1]");
  if (t < 0) throw std::invalid_argument("analytical_reference_curve: t must be >= 0");
  const double p = std::get<GeometricWakeup>(model.wakeup).p;
  const double q = std::get<BernoulliIncrement>(model.increment).q;
  std::vector<double> out(static_cast<size_t>(t) + 1);
  const double budget = t > 0 ? epsilon / t : epsilon;
  for (int tau = 0; tau <= t; ++tau) {
    double lower = mixture_quantile(p, q, tau, t, budget);
    double upper = mixture_quantile(p, q, tau, t, 1.0 - epsilon);
    out[static_cast<size_t>(tau)] = std::min(lower, upper);
  }
  return out;
}

}  // namespace tnc
