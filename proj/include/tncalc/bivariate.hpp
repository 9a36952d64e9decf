#pragma once

#include <functional>
#include <optional>
#include <span>

#include "tncalc/grid.hpp"

namespace tnc {

/// A real-valued function S(tau,t) on the discrete triangle 0 <= tau <= t <= horizon,
/// stored densely row-by-row (row tau holds t = tau..horizon contiguously).
/// The diagonal S(t,t) is 0 by convention for every service process and curve
/// in this library; querying tau > t is a contract violation.
class BivariateFunction {
 public:
  explicit BivariateFunction(TimeGrid grid)
      : grid_(grid), values_(cell_count(grid.horizon), 0.0) {}

  /// S(tau,t) = c[t] - c[tau]; the additive function with cumulative c.
  static BivariateFunction from_cumulative(TimeGrid grid, const std::vector<double>& c);

  /// Fills the triangle from fn(tau,t).
  static BivariateFunction from_fn(TimeGrid grid,
                                   const std::function<double(int, int)>& fn);

  const TimeGrid& grid() const { return grid_; }
  int horizon() const { return grid_.horizon; }

  double operator()(int tau, int t) const { return values_[index(tau, t)]; }
  void set(int tau, int t, double v) { values_[index(tau, t)] = v; }

  /// Values S(tau, t) for t = tau..horizon, contiguous.
  std::span<const double> row(int tau) const {
    if (tau < 0 || tau > grid_.horizon)
      throw std::out_of_range("BivariateFunction::row: tau outside grid");
    return {values_.data() + row_offset(tau), static_cast<size_t>(grid_.horizon - tau + 1)};
  }

  const std::vector<double>& raw() const { return values_; }
  std::vector<double>& raw() { return values_; }

  bool diagonal_is_zero(double tol = 0.0) const;
  bool is_nonnegative(double tol = 0.0) const;

 private:
  static size_t cell_count(int horizon) {
    size_t n = static_cast<size_t>(horizon) + 1;
    return n * (n + 1) / 2;
  }
  size_t row_offset(int tau) const {
    size_t h1 = static_cast<size_t>(grid_.horizon) + 1;
    size_t u = static_cast<size_t>(tau);
    return u * h1 - u * (u - 1) / 2;
  }
  size_t index(int tau, int t) const {
    if (tau < 0 || t > grid_.horizon)
      throw std::out_of_range("BivariateFunction: index outside grid");
    if (tau > t)
      throw std::out_of_range("BivariateFunction: queried tau > t");
    return row_offset(tau) + static_cast<size_t>(t - tau);
  }

  TimeGrid grid_;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Min-plus algebra
// ---------------------------------------------------------------------------

/// Min-plus convolution h(s,u) = min over t in [s,u] of f(s,t) + g(t,u).
/// Associative; not commutative for bivariate functions. Ties take the
/// smallest intermediate index (result values unaffected).
BivariateFunction minplus_convolve(const BivariateFunction& f, const BivariateFunction& g);

/// Convolution f (x) g when g is additive with cumulative c, i.e.
/// g(t,u) = c[u] - c[t]. O(horizon^2) instead of O(horizon^3).
BivariateFunction minplus_convolve_additive(const BivariateFunction& f,
                                            const std::vector<double>& g_cumulative);

/// Departures of the min-plus linear system: D(t) = min over tau in [0,t]
/// of A(tau) + S(tau,t). Exact for linear systems, a guarantee otherwise.
CumulativePath departures(const CumulativePath& arrivals, const BivariateFunction& service);

/// D(t) = min over tau of A(tau) + (c[t] - c[tau]) for additive service with
/// cumulative c; O(horizon) running-minimum form.
std::vector<double> departures_additive(const std::vector<double>& arrivals,
                                        const std::vector<double>& service_cumulative);

/// Backlog series B(t) = A(t) - D(t). Throws if D exceeds A anywhere
/// (causality violation), naming the first offending slot.
TimeSeries backlog_of(const CumulativePath& arrivals, const CumulativePath& departures);

/// First-come first-serve delay at slot t: smallest w >= 0 with
/// A(t) <= D(t+w). Empty when no such w exists within the grid.
std::optional<int> fcfs_delay_of(const CumulativePath& arrivals,
                                 const CumulativePath& departures, int t);

// ---------------------------------------------------------------------------
// Canonical constructors
// ---------------------------------------------------------------------------

/// Latency-rate service with a transient latency tied to the regeneration
/// point at 0: S(tau,t) = R * max(0, t - max(tau, T)). Additive.
BivariateFunction transient_latency_rate(TimeGrid grid, double rate, int latency);

/// Latency-rate service with a stationary latency: S(tau,t) = R * max(0, t - tau - T).
/// Super-additive but not additive (deviation RT for t >= tau + 2T).
BivariateFunction stationary_latency_rate(TimeGrid grid, double rate, int latency);

/// Finite stand-in for the min-plus burst (Dirac) probe: c[0] = 0, c[t] = cap
/// for t > 0. Results downstream must be insensitive to doubling the cap.
CumulativePath burst_path(TimeGrid grid, double cap);

// ---------------------------------------------------------------------------
// Additivity diagnostics
// ---------------------------------------------------------------------------

/// Delta(s,u) = f(s,u) - min over t in [s,u] of f(s,t) + f(t,u).
/// Nonnegative iff f is super-additive on [s,u]; zero for additive f.
double deviation_from_additivity(const BivariateFunction& f, int s, int u);

/// Exhaustive check of f(s,u) >= f(s,t) + f(t,u) - tol over all s <= t <= u.
bool is_super_additive(const BivariateFunction& f, double tol = 0.0);

/// Exhaustive check of |f(s,u) - f(s,t) - f(t,u)| <= tol over all s <= t <= u.
bool is_additive(const BivariateFunction& f, double tol = 1e-9);

/// Elementwise minimum. Preserves super-additivity of the inputs.
BivariateFunction pointwise_min(const BivariateFunction& f, const BivariateFunction& g);

}  // namespace tnc
