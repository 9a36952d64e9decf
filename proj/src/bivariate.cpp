#include "tncalc/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tnc {

BivariateFunction BivariateFunction::from_cumulative(TimeGrid grid,
                                                     const std::vector<double>& c) {
  if (c.size() != static_cast<size_t>(grid.points()))
    throw std::invalid_argument("from_cumulative: value count does not match grid");
  BivariateFunction f(grid);
  for (int tau = 0; tau <= grid.horizon; ++tau) {
    double base = c[static_cast<size_t>(tau)];
    double* out = f.values_.data() + f.row_offset(tau);
    for (int t = tau; t <= grid.horizon; ++t)
      out[t - tau] = c[static_cast<size_t>(t)] - base;
  }
  return f;
}

BivariateFunction BivariateFunction::from_fn(TimeGrid grid,
                                             const std::function<double(int, int)>& fn) {
  BivariateFunction f(grid);
  for (int tau = 0; tau <= grid.horizon; ++tau)
    for (int t = tau; t <= grid.horizon; ++t)
      f.set(tau, t, fn(tau, t));
  return f;
}

bool BivariateFunction::diagonal_is_zero(double tol) const {
  for (int t = 0; t <= grid_.horizon; ++t)
    if (std::abs((*this)(t, t)) > tol) return false;
  return true;
}

bool BivariateFunction::is_nonnegative(double tol) const {
  for (double v : values_)
    if (v < -tol) return false;
  return true;
}

BivariateFunction minplus_convolve(const BivariateFunction& f, const BivariateFunction& g) {
  require_same_grid(f.grid(), g.grid(), "minplus_convolve");
  const int H = f.horizon();
  BivariateFunction h(f.grid());
  for (int s = 0; s <= H; ++s) {
    auto fs = f.row(s);
    for (int u = s; u <= H; ++u) {
      double best = std::numeric_limits<double>::infinity();
      for (int t = s; t <= u; ++t) {
        double v = fs[static_cast<size_t>(t - s)] + g(t, u);
        if (v < best) best = v;
      }
      h.set(s, u, best);
    }
  }
  return h;
}

BivariateFunction minplus_convolve_additive(const BivariateFunction& f,
                                            const std::vector<double>& g_cumulative) {
  const int H = f.horizon();
  if (g_cumulative.size() != static_cast<size_t>(H + 1))
    throw std::invalid_argument("minplus_convolve_additive: cumulative size mismatch");
  BivariateFunction h(f.grid());
  // h(s,u) = c[u] + min over t in [s,u] of (f(s,t) - c[t]); running minimum in t.
  for (int s = 0; s <= H; ++s) {
    auto fs = f.row(s);
    double m = std::numeric_limits<double>::infinity();
    for (int u = s; u <= H; ++u) {
      m = std::min(m, fs[static_cast<size_t>(u - s)] - g_cumulative[static_cast<size_t>(u)]);
      h.set(s, u, g_cumulative[static_cast<size_t>(u)] + m);
    }
  }
  return h;
}

CumulativePath departures(const CumulativePath& arrivals, const BivariateFunction& service) {
  require_same_grid(arrivals.grid(), service.grid(), "departures");
  const int H = arrivals.horizon();
  std::vector<double> d(static_cast<size_t>(H + 1));
  for (int t = 0; t <= H; ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (int tau = 0; tau <= t; ++tau) {
      double v = arrivals[tau] + service(tau, t);
      if (v < best) best = v;
    }
    d[static_cast<size_t>(t)] = best;
  }
  return CumulativePath::unchecked(arrivals.grid(), std::move(d));
}

std::vector<double> departures_additive(const std::vector<double>& arrivals,
                                        const std::vector<double>& service_cumulative) {
  if (arrivals.size() != service_cumulative.size())
    throw std::invalid_argument("departures_additive: size mismatch");
  std::vector<double> d(arrivals.size());
  double m = std::numeric_limits<double>::infinity();
  for (size_t t = 0; t < arrivals.size(); ++t) {
    m = std::min(m, arrivals[t] - service_cumulative[t]);
    d[t] = service_cumulative[t] + m;
  }
  return d;
}

TimeSeries backlog_of(const CumulativePath& arrivals, const CumulativePath& departures) {
  require_same_grid(arrivals.grid(), departures.grid(), "backlog_of");
  TimeSeries b(arrivals.grid());
  for (int t = 0; t <= arrivals.horizon(); ++t) {
    double v = arrivals[t] - departures[t];
    if (v < -1e-9)
      throw std::runtime_error("backlog_of: departures exceed arrivals at t=" +
                               std::to_string(t) + " (causality violation)");
    b[t] = std::max(v, 0.0);
  }
  return b;
}

std::optional<int> fcfs_delay_of(const CumulativePath& arrivals,
                                 const CumulativePath& departures, int t) {
  require_same_grid(arrivals.grid(), departures.grid(), "fcfs_delay_of");
  if (t < 0 || t > arrivals.horizon())
    throw std::out_of_range("fcfs_delay_of: t outside grid");
  const double a = arrivals[t];
  for (int w = 0; t + w <= arrivals.horizon(); ++w)
    if (a <= departures[t + w] + 1e-9) return w;
  return std::nullopt;
}

BivariateFunction transient_latency_rate(TimeGrid grid, double rate, int latency) {
  if (rate < 0.0) throw std::invalid_argument("transient_latency_rate: rate must be >= 0");
  if (latency < 0 || latency > grid.horizon)
    throw std::invalid_argument("transient_latency_rate: latency outside [0, horizon]");
  return BivariateFunction::from_fn(grid, [=](int tau, int t) {
    return rate * std::max(0, t - std::max(tau, latency));
  });
}

BivariateFunction stationary_latency_rate(TimeGrid grid, double rate, int latency) {
  if (rate < 0.0) throw std::invalid_argument("stationary_latency_rate: rate must be >= 0");
  if (latency < 0 || latency > grid.horizon)
    throw std::invalid_argument("stationary_latency_rate: latency outside [0, horizon]");
  return BivariateFunction::from_fn(grid, [=](int tau, int t) {
    return rate * std::max(0, t - tau - latency);
  });
}

CumulativePath burst_path(TimeGrid grid, double cap) {
  if (!(cap >= 0.0)) throw std::invalid_argument("burst_path: cap must be >= 0");
  std::vector<double> c(static_cast<size_t>(grid.points()), cap);
  c[0] = 0.0;
  return CumulativePath(grid, std::move(c));
}

double deviation_from_additivity(const BivariateFunction& f, int s, int u) {
  if (s > u) throw std::invalid_argument("deviation_from_additivity: s > u");
  double best = std::numeric_limits<double>::infinity();
  for (int t = s; t <= u; ++t)
    best = std::min(best, f(s, t) + f(t, u));
  return f(s, u) - best;
}

bool is_super_additive(const BivariateFunction& f, double tol) {
  const int H = f.horizon();
  for (int s = 0; s <= H; ++s) {
    auto fs = f.row(s);
    for (int t = s; t <= H; ++t) {
      auto ft = f.row(t);
      const double head = fs[static_cast<size_t>(t - s)];
      for (int u = t; u <= H; ++u)
        if (fs[static_cast<size_t>(u - s)] + tol < head + ft[static_cast<size_t>(u - t)])
          return false;
    }
  }
  return true;
}

bool is_additive(const BivariateFunction& f, double tol) {
  const int H = f.horizon();
  for (int s = 0; s <= H; ++s) {
    auto fs = f.row(s);
    for (int t = s; t <= H; ++t) {
      auto ft = f.row(t);
      const double head = fs[static_cast<size_t>(t - s)];
      for (int u = t; u <= H; ++u)
        if (std::abs(fs[static_cast<size_t>(u - s)] - head - ft[static_cast<size_t>(u - t)]) > tol)
          return false;
    }
  }
  return true;
}

BivariateFunction pointwise_min(const BivariateFunction& f, const BivariateFunction& g) {
  require_same_grid(f.grid(), g.grid(), "pointwise_min");
  BivariateFunction h(f.grid());
  const auto& fv = f.raw();
  const auto& gv = g.raw();
  auto& hv = h.raw();
  for (size_t i = 0; i < hv.size(); ++i) hv[i] = std::min(fv[i], gv[i]);
  return h;
}

}  // namespace tnc
