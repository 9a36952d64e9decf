#pragma once

#include <optional>
#include <variant>

#include "tncalc/bivariate.hpp"
#include "tncalc/grid.hpp"
#include "tncalc/rng.hpp"

namespace tnc {

// ---------------------------------------------------------------------------
// Regenerative sleep-scheduling service
// ---------------------------------------------------------------------------

struct DeterministicWakeup {
  int latency;  // T slots asleep; service possible from slot T+1 on
};

struct GeometricWakeup {
  double p;  // P[T = v] = p (1-p)^v on v in {0,1,...}; E[T] = (1-p)/p
};

struct ConstantRateIncrement {
  double rate;  // Z(v) = rate for every usable slot
};

struct BernoulliIncrement {
  double q;  // Z(v) iid Bernoulli(q); basic wireless outage model
};

/// A system that regenerates by going to sleep at slot 0: Z(v) = 0 for
/// v in [0,T], afterwards iid increments. S(tau,t) = sum of Z over (tau,t].
struct SleepServiceModel {
  std::variant<DeterministicWakeup, GeometricWakeup> wakeup;
  std::variant<ConstantRateIncrement, BernoulliIncrement> increment;

  static SleepServiceModel deterministic(int latency, double rate);
  static SleepServiceModel geometric(double p, double q);
  static SleepServiceModel geometric_constant_rate(double p, double rate);
  static SleepServiceModel deterministic_bernoulli(int latency, double q);

  bool has_geometric_wakeup() const {
    return std::holds_alternative<GeometricWakeup>(wakeup);
  }
  bool has_bernoulli_increment() const {
    return std::holds_alternative<BernoulliIncrement>(increment);
  }
};

/// Cumulative service C(t) = sum of Z(v) for v <= t of one realization;
/// the sampled service process is S(tau,t) = C(t) - C(tau).
std::vector<double> sample_service_cumulative(const SleepServiceModel& model, TimeGrid grid,
                                              Rng& rng);

/// Full triangle of one realization. Additive by construction.
BivariateFunction sample_service_path(const SleepServiceModel& model, TimeGrid grid,
                                      uint64_t seed);

// ---------------------------------------------------------------------------
// MGFs (log domain; exponents of order t-tau overflow otherwise)
// ---------------------------------------------------------------------------

/// ln E[e^{theta U(tau,t)}] for the usable slots U(tau,t) = [t - max(tau,T)]+
/// under a geometric wake-up. Three terms: T <= tau, T inside (tau,t], T > t.
/// theta may be negative.
double log_mgf_usable_slots(const GeometricWakeup& wakeup, double theta, int tau, int t);
double mgf_usable_slots(const SleepServiceModel& model, double theta, int tau, int t);

/// ln E[e^{theta S(tau,t)}] = log_mgf_usable_slots(ln M_Z(theta), tau, t)
/// with M_Z(theta) = q e^theta + 1 - q. Requires geometric wake-up and
/// Bernoulli increments.
double log_mgf_service(const SleepServiceModel& model, double theta, int tau, int t);
double mgf_service(const SleepServiceModel& model, double theta, int tau, int t);

// ---------------------------------------------------------------------------
// Non-stationary service curve
// ---------------------------------------------------------------------------

/// Free parameters of the Chernoff/union-bound curve construction.
/// rho must lie in (0, 1/epsilon]; when absent it is optimized over a log
/// grid of decades {1e-6 .. 1e-1}. theta is optimized per cell on a
/// log-spaced grid with golden-section refinement.
struct ServiceCurveParams {
  double epsilon = 1e-6;
  std::optional<double> rho = 1e-4;
  int theta_grid_points = 64;
  double theta_min = 1e-4;
  double theta_max = 1e2;
};

/// Lower service envelope holding on whole sample paths with probability
/// >= 1 - epsilon:
///   S^eps(tau,t) = -(1/theta) ( ln M_S(-theta,tau,t) + rho (t-tau) - ln(rho eps) ),
/// maximized over theta per cell and clamped at 0.
BivariateFunction nonstationary_service_curve(const SleepServiceModel& model, TimeGrid grid,
                                              const ServiceCurveParams& params);

/// Per-tau upper bound on any valid service envelope at fixed t: the
/// (1-eps)-quantile of the mixture over T of Binomial(t - max(tau,T), q).
/// Exact enumeration of the wake-up time (tail lumped into zero trials).
std::vector<double> analytical_upper_bound(const SleepServiceModel& model, double epsilon,
                                           int t);

/// Valid service curve from the same binomial mixture: per-tau violation
/// budget eps/t (union bound over tau in [0,t-1]), capped by the upper
/// bound so the pair brackets every admissible envelope.
std::vector<double> analytical_reference_curve(const SleepServiceModel& model, double epsilon,
                                               int t);

}  // namespace tnc
