#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tnc {

/// Discrete time axis. All functions in the library are indexed by integer
/// slot indices 0..horizon; slot_width converts slot counts to seconds
/// (pure-model studies use 1.0).
struct TimeGrid {
  int horizon = 1;
  double slot_width = 1.0;

  TimeGrid() = default;
  TimeGrid(int horizon_, double slot_width_ = 1.0)
      : horizon(horizon_), slot_width(slot_width_) {
    if (horizon < 1) throw std::invalid_argument("TimeGrid: horizon must be >= 1");
    if (!(slot_width > 0.0)) throw std::invalid_argument("TimeGrid: slot_width must be > 0");
  }

  int points() const { return horizon + 1; }
  bool operator==(const TimeGrid&) const = default;
};

inline void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* op) {
  if (!(a == b))
    throw std::invalid_argument(std::string(op) + ": operands live on different grids");
}

/// A cumulative sample path c[t] in data units: c[0] = 0, nondecreasing.
/// Carries arrivals A(t) and departures D(t); interval(tau,t) = c[t] - c[tau].
class CumulativePath {
 public:
  explicit CumulativePath(TimeGrid grid)
      : grid_(grid), values_(static_cast<size_t>(grid.points()), 0.0) {}

  CumulativePath(TimeGrid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(grid_.points()))
      throw std::invalid_argument("CumulativePath: value count does not match grid");
    if (values_[0] != 0.0)
      throw std::invalid_argument("CumulativePath: c[0] must be 0");
    for (size_t t = 1; t < values_.size(); ++t)
      if (values_[t] < values_[t - 1])
        throw std::invalid_argument("CumulativePath: values must be nondecreasing (violated at t=" +
                                    std::to_string(t) + ")");
  }

  /// Wraps values without the monotonicity check. Departure paths computed
  /// against non-monotone service curves may legitimately dip.
  static CumulativePath unchecked(TimeGrid grid, std::vector<double> values) {
    CumulativePath p(grid);
    if (values.size() != static_cast<size_t>(grid.points()))
      throw std::invalid_argument("CumulativePath: value count does not match grid");
    p.values_ = std::move(values);
    return p;
  }

  const TimeGrid& grid() const { return grid_; }
  int horizon() const { return grid_.horizon; }

  double operator[](int t) const { return values_[check(t)]; }
  double interval(int tau, int t) const {
    if (tau > t) throw std::out_of_range("CumulativePath::interval: tau > t");
    return values_[check(t)] - values_[check(tau)];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  size_t check(int t) const {
    if (t < 0 || t > grid_.horizon)
      throw std::out_of_range("CumulativePath: index outside grid");
    return static_cast<size_t>(t);
  }

  TimeGrid grid_;
  std::vector<double> values_;
};

/// A value per slot with no shape constraints (backlog series, bound series,
/// quantile series).
struct TimeSeries {
  TimeGrid grid;
  std::vector<double> values;

  TimeSeries(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<size_t>(grid.points()))
      throw std::invalid_argument("TimeSeries: value count does not match grid");
  }
  explicit TimeSeries(TimeGrid g) : grid(g), values(static_cast<size_t>(g.points()), 0.0) {}

  double operator[](int t) const { return values.at(static_cast<size_t>(t)); }
  double& operator[](int t) { return values.at(static_cast<size_t>(t)); }
};

}  // namespace tnc
