#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "renyi/measure.hpp"
#include "renyi/order.hpp"
#include "renyi/quadrature.hpp"

namespace renyi {

// Piecewise-constant non-negative function on (0, T]: values[i] on
// (breaks[i-1], breaks[i]] with breaks[last] = T implied by the holder.
struct PiecewiseConstant {
  std::vector<double> breaks;  // strictly increasing interior breakpoints
  std::vector<double> values;  // one more entry than breaks

  double operator()(double t) const;
  double min_value() const;
  double max_value() const;
  void check(double horizon) const;
};

// Probability density on the unit circle [0,1), with annotations for the
// endpoints where it is unbounded. Construction certifies unit integral
// within 1e-8 by adaptive quadrature and spot-checks non-negativity.
class DensityOnCircle {
 public:
  static DensityOnCircle uniform();
  static DensityOnCircle linear();              // f(y) = 2y
  static DensityOnCircle power(double beta);    // f(y) = (1-beta) y^(-beta)
  static DensityOnCircle piecewise(PiecewiseConstant pc);
  static DensityOnCircle custom(std::function<double(double)> f,
                                std::vector<double> singular_endpoints, double ess_sup);

  double operator()(double y) const { return f_(y); }
  const std::vector<double>& singular_endpoints() const { return singular_; }
  const std::vector<double>& split_points() const { return splits_; }
  double ess_sup() const { return ess_sup_; }

 private:
  DensityOnCircle(std::function<double(double)> f, std::vector<double> singular,
                  double ess_sup, bool validate, std::vector<double> splits = {});
  std::function<double(double)> f_;
  std::vector<double> singular_;
  std::vector<double> splits_;  // interior discontinuities, for the quadrature
  double ess_sup_;
};

// Capacity of the family of mod-1 shifts of a density: the divergence of
// the density to the flat measure. +infinity when the defining integral
// diverges, detected by refinement near the annotated singularities.
double shift_capacity(const DensityOnCircle& f, Order alpha, double quad_tol = 1e-9);

// Supremum of shift_capacity over a finite list of densities.
double shift_family_capacity(const std::vector<DensityOnCircle>& fs, Order alpha,
                             double quad_tol = 1e-9);

enum class PoissonConstraintKind { None, MeanEq, MeanLe, MeanGe };

// Family of Poisson point processes on (0, T] with intensities between a
// constant floor and either a constant ceiling or an integrable envelope,
// optionally constrained in average intensity.
struct PoissonFamilySpec {
  double horizon = 1.0;
  double floor = 0.0;
  bool has_envelope = false;
  double ceiling = 1.0;        // constant ceiling when has_envelope is false
  PiecewiseConstant envelope;  // ceiling function otherwise
  PoissonConstraintKind constraint = PoissonConstraintKind::None;
  double mean_value = 0.0;

  void check() const;
};

using IntensityFn = std::function<double(double)>;

// Renyi divergence between two Poisson processes with the given intensity
// functions, by adaptive quadrature of the pointwise integrand.
double poisson_divergence(const IntensityFn& f, const IntensityFn& g, double horizon,
                          Order alpha, double quad_tol = 1e-9);
// Closed form for constant intensities.
double poisson_divergence_const(double f, double g, double horizon, Order alpha);

struct PoissonCapacity {
  double capacity;
  double center_intensity;
};

// Mean-pinned family: closed-form capacity and constant center intensity.
PoissonCapacity poisson_mean_capacity(double horizon, double floor, double ceiling,
                                      double mean, Order alpha);
// Mixture form of the same capacity; used as an internal cross-check.
double poisson_mean_capacity_mixture_form(double horizon, double floor, double ceiling,
                                          double mean, Order alpha);

// One-sided mean constraints reduce to the pinned family at a clamped mean.
PoissonCapacity poisson_constrained_capacity(double horizon, double floor, double ceiling,
                                             double mean, PoissonConstraintKind kind,
                                             Order alpha);

// Unconstrained bounded-intensity family.
PoissonCapacity poisson_bounded_capacity(double horizon, double floor, double ceiling,
                                         Order alpha);

// Critical mean at which the one-sided constraints stop binding.
double poisson_optimal_mean(double floor, double ceiling, Order alpha);

struct PoissonProductCapacity {
  double capacity;
  PiecewiseConstant center_intensity;  // pointwise center intensity
};

// Envelope-bounded family: integral of the pointwise bounded-capacity
// integrand; piecewise-constant envelopes reduce exactly to a sum of
// bounded capacities on the segments.
PoissonProductCapacity poisson_product_capacity(double horizon, double floor,
                                                const PiecewiseConstant& envelope,
                                                Order alpha, double quad_tol = 1e-9);

// Quadrature route for arbitrary evaluator envelopes; returns capacity only.
double poisson_product_capacity_quad(double horizon, double floor,
                                     const IntensityFn& envelope, Order alpha,
                                     double quad_tol = 1e-9);

// Sorted arrival times in (0, T].
struct SamplePath {
  std::vector<double> arrivals;
};

// Draws a path of the inhomogeneous process by thinning against the bound.
SamplePath poisson_sample(const IntensityFn& f, double intensity_bound, double horizon,
                          std::uint64_t seed);

// Likelihood ratio of the path under intensity f against the unit-rate
// process: (prod_j f(tau_j)) exp(int (1 - f)).
double poisson_rnd(const SamplePath& path, const IntensityFn& f, double horizon,
                   double quad_tol = 1e-9);
double poisson_log_rnd(const SamplePath& path, const IntensityFn& f, double horizon,
                       double quad_tol = 1e-9);

struct McEstimate {
  double estimate;
  double stderr_;
  std::size_t samples;
};

// Monte-Carlo estimate of the Poisson divergence through the likelihood
// ratios under the unit-rate reference process.
McEstimate poisson_mc_divergence(const IntensityFn& f, double f_bound, const IntensityFn& g,
                                 double g_bound, double horizon, Order alpha,
                                 std::size_t n_samples, std::uint64_t seed);
McEstimate poisson_mc_divergence_const(double f, double g, double horizon, Order alpha,
                                       std::size_t n_samples, std::uint64_t seed);

// Bin-counting discretization: outputs are per-bin occupancy patterns
// truncated at max count K with an overflow symbol, rows are
// piecewise-constant intensity profiles on the bin grid filtered by the
// spec's constraint. Row count is capped at 4096 by seeded subsampling.
struct DiscretizeOptions {
  std::size_t max_count = 4;
  std::size_t row_cap = 4096;
  std::size_t output_budget = 50000;
};

FiniteChannel poisson_discretize(const PoissonFamilySpec& spec, std::size_t n_bins,
                                 std::size_t n_levels, const DiscretizeOptions& opt = {});

}  // namespace renyi
