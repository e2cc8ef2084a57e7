#pragma once

#include "renyi/measure.hpp"
#include "renyi/order.hpp"

namespace renyi {

// Order-alpha Renyi divergence between two non-zero finite measures on a
// common finite alphabet, in nats. +infinity is a first-class return value
// (absolute-continuity failures at alpha >= 1, mutually singular arguments
// at alpha in (0,1), and so on). Branches:
//   alpha = 0:            -log q({w > 0})
//   alpha in R+ \ {1}:    (1/(alpha-1)) log sum_y w^alpha q^(1-alpha)
//   alpha = 1:            sum_y w (log w - log q)
//   alpha = inf:          log max_{y: w>0} w/q
// Conventions: 0*log 0 = 0, 0^alpha = 0, outputs with w = q = 0 ignored.
double renyi_divergence(const FiniteMeasure& w, const FiniteMeasure& q, Order alpha);
double renyi_divergence(const Pmf& w, const Pmf& q, Order alpha);

// Same value computed from element-wise logarithms of the two measures;
// entries may be -inf. Used by the solver to stay in the log domain.
double renyi_divergence_log(std::span<const double> log_w, std::span<const double> log_q,
                            Order alpha);

// Order-alpha Renyi entropy of a binary distribution (delta, 1-delta).
double binary_renyi_entropy(double delta, Order alpha);

}  // namespace renyi
