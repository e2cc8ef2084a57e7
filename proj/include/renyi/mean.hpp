#pragma once

#include <vector>

#include "renyi/divergence.hpp"
#include "renyi/measure.hpp"
#include "renyi/order.hpp"

namespace renyi {

// Order-alpha mean measure of the channel rows for a prior: the per-output
// power mean of the row probabilities weighted by the prior (geometric mean
// at alpha = 0, maximum over the support at alpha = inf).
struct MeanMeasure {
  Order order;
  FiniteMeasure measure;
  std::size_t prior_support_size;

  double norm() const { return measure.norm(); }
};

MeanMeasure mean_measure(const FiniteChannel& ch, const Prior& p, Order alpha);

// Per-output posteriors T_alpha(w|y) for a finite positive order; columns
// are pmfs over the prior support at every output carrying mean mass.
struct PosteriorMatrix {
  Order order;
  std::vector<bool> supported;               // outputs with positive order-1 mean mass
  std::vector<std::vector<double>> entries;  // entries[y][w], zero columns off support
};

// Density of the order-alpha mean w.r.t. the order-1 mean together with the
// order-alpha posterior. Only finite positive orders are served.
struct DensityPosterior {
  std::vector<double> density;  // n_{alpha}(y) on supported outputs, 0 elsewhere
  PosteriorMatrix posterior;
};

DensityPosterior mean_density_and_posterior(const FiniteChannel& ch, const Prior& p,
                                            Order alpha);

// Order-alpha Renyi information for the prior, in nats. Lies in
// [0, log |support|] for every order in [0, inf].
double renyi_information(const FiniteChannel& ch, const Prior& p, Order alpha);

// d/dalpha of the Renyi information at a finite positive order.
double renyi_information_derivative(const FiniteChannel& ch, const Prior& p, Order alpha);

// Gallager's E0 function: -log sum_y (sum_w P(w) W(y|w)^(1/(1+rho)))^(1+rho).
// Computed directly, not through the information identity it satisfies.
double gallager_e0(double rho, const FiniteChannel& ch, const Prior& p);

// Order-alpha Renyi mean: the normalized mean measure for positive orders;
// at order zero, the weighted indicator construction over the outputs whose
// reachable prior mass attains the essential supremum.
Pmf renyi_mean(const FiniteChannel& ch, const Prior& p, Order alpha);

// Divergence between the joint P x W and the product P (x) Q.  Decomposes
// exactly as information plus center-to-Q divergence for positive orders.
double joint_divergence(const FiniteChannel& ch, const Prior& p, const FiniteMeasure& q,
                        Order alpha);

}  // namespace renyi
