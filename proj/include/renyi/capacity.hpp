#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "renyi/mean.hpp"
#include "renyi/measure.hpp"
#include "renyi/order.hpp"

namespace renyi {

// Two-sided certificate for a capacity value: the information of the
// returned prior is always a valid lower bound and the relative radius at
// the returned center is always a valid upper bound, independently of how
// the iteration behaved. The reported capacity is the bracket midpoint.
struct CapacitySolution {
  Order order;
  double capacity;
  double lower_bound;  // information of `prior`
  double upper_bound;  // relative radius at `center`
  double gap;          // upper - lower
  Pmf center;
  Prior prior;
  std::size_t iterations;
  bool converged;
};

// max_w D_alpha(W_w || q); +infinity allowed.
double relative_radius(const FiniteChannel& ch, const FiniteMeasure& q, Order alpha);

struct SolverOptions {
  double tol = 1e-9;
  std::size_t max_iter = 50000;
  std::size_t restarts = 8;  // extra random starts for orders in (0,1)
};

// Certified capacity for orders in (0, inf]. Order zero is refused. The
// order-infinity case is served by the closed form
// C = log ||max_w W_w|| with center (max_w W_w) e^{-C}.
CapacitySolution solve_capacity(const FiniteChannel& ch, Order alpha, double tol = 1e-9,
                                std::size_t max_iter = 50000);
CapacitySolution solve_capacity(const FiniteChannel& ch, Order alpha,
                                const SolverOptions& options);

// One solution per start (uniform start first, then the random restarts used
// for orders in (0,1)); solve_capacity returns the best of these.
std::vector<CapacitySolution> solve_capacity_restarts(const FiniteChannel& ch, Order alpha,
                                                      const SolverOptions& options);

// Independent oracle: minimum of the relative radius over the uniform
// simplex grid with the given resolution. Output alphabet is capped at 4.
double radius_bruteforce(const FiniteChannel& ch, Order alpha, std::size_t grid_resolution);

// Diagnostics for a capacity-versus-order sweep: monotonicity of the curve,
// convexity of (alpha-1) C_alpha above order one, monotonicity of
// ((1-alpha)/alpha) C_alpha below order one, and a Lipschitz bound on
// adjacent jumps inside a compact sub-interval of the finite-capacity range.
struct CurveDiagnostics {
  std::size_t monotonicity_violations = 0;
  std::size_t convexity_violations = 0;
  std::size_t low_order_transform_violations = 0;
  std::size_t lipschitz_violations = 0;
  double worst_excess = 0.0;  // largest violation beyond the allowed slack
};

struct CurveResult {
  std::vector<CapacitySolution> points;
  CurveDiagnostics diagnostics;
};

CurveResult capacity_curve(const FiniteChannel& ch, const std::vector<Order>& alphas,
                           double tol = 1e-9, std::size_t max_iter = 50000);

// Convex prior constraint: everything, a support restriction, or a single
// linear cost sum_w c(w) P(w) <= budget (or >=).
struct ConstraintSet {
  enum class Kind { Unconstrained, SupportRestriction, LinearCost };
  enum class Direction { LessEqual, GreaterEqual };

  Kind kind = Kind::Unconstrained;
  std::vector<std::size_t> support;  // SupportRestriction
  std::vector<double> costs;         // LinearCost
  double budget = 0.0;
  Direction direction = Direction::LessEqual;

  static ConstraintSet unconstrained();
  static ConstraintSet support_restriction(std::vector<std::size_t> indices);
  static ConstraintSet linear_cost(std::vector<double> costs, double budget, Direction dir);

  void check_feasible(const FiniteChannel& ch) const;
};

// Certified constrained capacity for finite positive orders. The upper bound
// is sup over feasible priors of the joint divergence at the candidate
// center, computed exactly (vertex or two-point mixture of the polytope).
CapacitySolution solve_constrained_capacity(const FiniteChannel& ch, Order alpha,
                                            const ConstraintSet& constraint,
                                            double tol = 1e-9,
                                            std::size_t max_iter = 50000);

// relative_radius(ch,q) - capacity - D_alpha(center || q); non-negative up
// to numerical slack for every q when the solution is tight.
double ehb_gap(const FiniteChannel& ch, const Pmf& q, Order alpha,
               const CapacitySolution& solution);

// Exact supremum over the constraint set of the joint divergence to a fixed
// reference; the inner term is linear in the prior, so the optimum sits at a
// vertex or a two-row mixture of the feasible polytope.
double constrained_joint_sup(const FiniteChannel& ch, Order alpha,
                             const ConstraintSet& constraint, const FiniteMeasure& q);

// All pairwise tensor products of rows; output alphabet sizes multiply.
FiniteChannel product_channel(const FiniteChannel& a, const FiniteChannel& b);

// Concatenation of rows over a common output alphabet, exact duplicates removed.
FiniteChannel union_channel(const FiniteChannel& a, const FiniteChannel& b);

// Rows whose divergence from the solution's center is at least capacity - eps.
FiniteChannel epsilon_core(const FiniteChannel& ch, Order alpha, double eps,
                           const CapacitySolution& solution);

// Appends the mixture rows induced by the given priors.
FiniteChannel convex_hull_augment(const FiniteChannel& ch, const std::vector<Prior>& priors);

struct CenterContinuityReport {
  double capacity_increase;       // C_eta - C_alpha
  double center_divergence;       // D_alpha(center_alpha || center_eta)
  double center_tv;               // total variation between the two centers
  double tv_bound;                // sqrt(2 (C_eta - C_alpha) / min(1, eta))
  bool divergence_bound_holds;    // capacity_increase >= center_divergence - slack
  bool tv_bound_holds;            // center_tv <= tv_bound + slack
};

CenterContinuityReport center_continuity_check(const FiniteChannel& ch, Order alpha,
                                               Order eta, const CapacitySolution& sol_alpha,
                                               const CapacitySolution& sol_eta,
                                               std::optional<double> slack = std::nullopt);

// Seed material for the deterministic random restarts.
std::uint64_t channel_hash(const FiniteChannel& ch);

}  // namespace renyi
