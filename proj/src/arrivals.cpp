#include "tncalc/arrivals.hpp"

#include <cmath>
#include <limits>

#include "tncalc/rng.hpp"

namespace tnc {

double CompoundPoissonModel::theta_max() const {
  if (beta >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-beta);
}

double CompoundPoissonModel::log_mgf(double theta, double t) const {
  if (theta < 0.0) throw std::invalid_argument("log_mgf: theta must be >= 0");
  if (t < 0.0) throw std::invalid_argument("log_mgf: t must be >= 0");
  if (theta >= theta_max())
    throw std::invalid_argument("log_mgf: theta outside MGF domain [0, -ln(1-beta))");
  double e = std::exp(theta);
  double m1 = alpha * beta * e / (1.0 - (1.0 - beta) * e) + 1.0 - alpha;
  return t * std::log(m1);
}

ArrivalEnvelope build_envelope(const CompoundPoissonModel& model, double epsilon, double theta) {
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("build_envelope: epsilon must be in (0,1]");
  if (!(theta > 0.0)) throw std::invalid_argument("build_envelope: theta must be > 0");
  double rate = model.log_mgf(theta, 1.0) / theta;
  double burst = -std::log(epsilon) / theta;
  return ArrivalEnvelope{theta, epsilon, rate, burst};
}

namespace {

double envelope_value(const CompoundPoissonModel& model, double epsilon, double theta,
                      double t_eval) {
  return (model.log_mgf(theta, t_eval) - std::log(epsilon)) / theta;
}

}  // namespace

double optimize_envelope_theta(const CompoundPoissonModel& model, double epsilon,
                               double t_eval) {
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("optimize_envelope_theta: epsilon must be in (0,1]");
  // Cap the search for beta = 1, where the domain is unbounded.
  double hi = std::isinf(model.theta_max()) ? 50.0 : model.theta_max() * (1.0 - 1e-9);
  double lo = hi * 1e-8;
  auto value = [&](double th) { return envelope_value(model, epsilon, th, t_eval); };

  const int grid_points = 256;
  double best_theta = lo, best = value(lo);
  for (int i = 1; i < grid_points; ++i) {
    double th = lo * std::pow(hi / lo, static_cast<double>(i) / (grid_points - 1));
    double v = value(th);
    if (v < best) {
      best = v;
      best_theta = th;
    }
  }

  // Golden-section refinement between the grid neighbors of the minimum.
  double ratio = std::pow(hi / lo, 1.0 / (grid_points - 1));
  double a = best_theta / ratio, b = std::min(best_theta * ratio, hi);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = value(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = value(x2);
    }
  }
  double mid = 0.5 * (a + b);
  return value(mid) < best ? mid : best_theta;
}

ArrivalEnvelope optimal_envelope(const CompoundPoissonModel& model, double epsilon,
                                 double t_eval) {
  return build_envelope(model, epsilon, optimize_envelope_theta(model, epsilon, t_eval));
}

CumulativePath sample_arrival_path(const CompoundPoissonModel& model, TimeGrid grid,
                                   uint64_t seed) {
  Rng rng(seed);
  std::vector<double> c(static_cast<size_t>(grid.points()));
  c[0] = 0.0;
  double acc = 0.0;
  for (int t = 1; t <= grid.horizon; ++t) {
    if (rng.bernoulli(model.alpha))
      acc += static_cast<double>(rng.geometric_from_one(model.beta));
    c[static_cast<size_t>(t)] = acc;
  }
  return CumulativePath(grid, std::move(c));
}

CumulativePath cbr_path(double rate, TimeGrid grid) {
  if (rate < 0.0) throw std::invalid_argument("cbr_path: rate must be >= 0");
  std::vector<double> c(static_cast<size_t>(grid.points()));
  for (int t = 0; t <= grid.horizon; ++t)
    c[static_cast<size_t>(t)] = rate * grid.slot_width * t;
  return CumulativePath(grid, std::move(c));
}

}  // namespace tnc
