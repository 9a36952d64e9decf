#pragma once

#include "tncalc/grid.hpp"

namespace tnc {

/// Discrete-time compound Poisson traffic: in every slot a packet arrives
/// with probability alpha (independent Bernoulli trials) and packet sizes are
/// iid geometric on {1,2,...} with parameter beta. Mean rate alpha/beta;
/// alpha < beta is required for stability against a unit-rate server.
struct CompoundPoissonModel {
  double alpha;
  double beta;

  CompoundPoissonModel(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (alpha < 0.0 || alpha > 1.0)
      throw std::invalid_argument("CompoundPoissonModel: alpha must be in [0,1]");
    if (beta <= 0.0 || beta > 1.0)
      throw std::invalid_argument("CompoundPoissonModel: beta must be in (0,1]");
  }

  double mean_rate() const { return alpha / beta; }

  /// Upper end of the MGF domain: theta must stay below -ln(1-beta).
  double theta_max() const;

  /// ln E[e^{theta A(0,t)}] = t ln( alpha beta e^theta / (1-(1-beta)e^theta) + 1-alpha ).
  /// The increments are iid, so the MGF is multiplicative in t.
  double log_mgf(double theta, double t) const;
  double mgf(double theta, double t) const { return std::exp(log_mgf(theta, t)); }
};

/// Affine statistical envelope A^eps(t) = rate * t + burst holding
/// sample-pathwise with probability >= 1 - epsilon (Doob construction:
/// rate = ln M_A(theta,1)/theta, burst = -ln(eps)/theta).
struct ArrivalEnvelope {
  double theta;
  double epsilon;
  double rate;   // rho_A
  double burst;  // sigma_A

  double at(double dt) const { return rate * dt + burst; }
};

ArrivalEnvelope build_envelope(const CompoundPoissonModel& model, double epsilon, double theta);

/// Theta minimizing the envelope value at t_eval; deterministic log-spaced
/// grid search refined by golden section.
double optimize_envelope_theta(const CompoundPoissonModel& model, double epsilon, double t_eval);

/// Envelope at the per-t optimal theta.
ArrivalEnvelope optimal_envelope(const CompoundPoissonModel& model, double epsilon, double t_eval);

/// One cumulative sample path of the model on the grid.
CumulativePath sample_arrival_path(const CompoundPoissonModel& model, TimeGrid grid,
                                   uint64_t seed);

/// Constant bit rate path c[t] = rate * slot_width * t (rate in data units
/// per second; with slot_width 1 this is the per-slot rate).
CumulativePath cbr_path(double rate, TimeGrid grid);

}  // namespace tnc
