#include "renyi/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "renyi/numeric.hpp"
#include "renyi/rng.hpp"

namespace renyi {

double PiecewiseConstant::operator()(double t) const {
  std::size_t i = 0;
  while (i < breaks.size() && breaks[i] < t) ++i;
  return values[i];
}

double PiecewiseConstant::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double PiecewiseConstant::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

void PiecewiseConstant::check(double horizon) const {
  if (values.empty() || values.size() != breaks.size() + 1)
    throw DomainError("piecewise function needs one more value than breakpoints");
  for (double v : values) {
    if (!(v >= 0.0)) throw DomainError("piecewise values must be non-negative");
  }
  double prev = 0.0;
  for (double b : breaks) {
    if (!(b > prev && b < horizon))
      throw DomainError("breakpoints must increase strictly inside (0, horizon)");
    prev = b;
  }
}

namespace {

// Splits [0,1] (or (0,T]) at interior discontinuities and integrates each
// smooth piece, peeling toward the annotated singular endpoints.
IntegralResult integrate_pieces(const std::function<double(double)>& g, double lo, double hi,
                                const std::vector<double>& splits,
                                const std::vector<double>& singular, double tol) {
  std::vector<double> pts{lo};
  for (double s : splits) {
    if (s > lo && s < hi) pts.push_back(s);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());

  IntegralResult total;
  const double piece_tol = tol / static_cast<double>(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    std::vector<double> local_sing;
    for (double s : singular) {
      if (s == pts[i] || s == pts[i + 1]) local_sing.push_back(s);
    }
    IntegralResult piece =
        integrate_with_endpoint_singularities(g, pts[i], pts[i + 1], local_sing, piece_tol);
    if (piece.diverged) {
      total.diverged = true;
      return total;
    }
    total.value += piece.value;
  }
  return total;
}

}  // namespace

DensityOnCircle::DensityOnCircle(std::function<double(double)> f,
                                 std::vector<double> singular, double ess_sup,
                                 bool validate, std::vector<double> splits)
    : f_(std::move(f)), singular_(std::move(singular)), splits_(std::move(splits)),
      ess_sup_(ess_sup) {
  if (!validate) return;
  for (int i = 1; i < 257; ++i) {
    double y = static_cast<double>(i) / 257.0;
    if (!(f_(y) >= 0.0)) throw DomainError("density must be non-negative");
  }
  IntegralResult mass = integrate_pieces(f_, 0.0, 1.0, splits_, singular_, 1e-9);
  if (mass.diverged || std::abs(mass.value - 1.0) > 1e-8)
    throw DomainError("density must integrate to 1 within 1e-8");
}

DensityOnCircle DensityOnCircle::uniform() {
  return DensityOnCircle([](double) { return 1.0; }, {}, 1.0, false);
}

DensityOnCircle DensityOnCircle::linear() {
  return DensityOnCircle([](double y) { return 2.0 * y; }, {}, 2.0, false);
}

DensityOnCircle DensityOnCircle::power(double beta) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw DomainError("power density exponent must lie in [0,1)");
  if (beta == 0.0) return uniform();
  return DensityOnCircle(
      [beta](double y) { return y > 0.0 ? (1.0 - beta) * std::pow(y, -beta) : kInf; },
      {0.0}, kInf, false);
}

DensityOnCircle DensityOnCircle::piecewise(PiecewiseConstant pc) {
  pc.check(1.0);
  double mass = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < pc.values.size(); ++i) {
    double end = i < pc.breaks.size() ? pc.breaks[i] : 1.0;
    mass += (end - prev) * pc.values[i];
    prev = end;
  }
  if (std::abs(mass - 1.0) > 1e-8)
    throw DomainError("piecewise density must integrate to 1 within 1e-8");
  double sup = pc.max_value();
  std::vector<double> splits = pc.breaks;
  auto fn = [pc = std::move(pc)](double y) { return pc(y); };
  return DensityOnCircle(std::move(fn), {}, sup, false, std::move(splits));
}

DensityOnCircle DensityOnCircle::custom(std::function<double(double)> f,
                                        std::vector<double> singular_endpoints,
                                        double ess_sup) {
  return DensityOnCircle(std::move(f), std::move(singular_endpoints), ess_sup, true);
}

double shift_capacity(const DensityOnCircle& f, Order alpha, double quad_tol) {
  if (alpha.is_zero())
    throw OrderOutOfRange("shift capacity is defined for positive orders");
  if (alpha.is_infinity()) return std::log(f.ess_sup());

  if (alpha.is_one()) {
    auto integrand = [&f](double y) {
      double v = f(y);
      return xlnx(v);
    };
    IntegralResult r = integrate_pieces(integrand, 0.0, 1.0, f.split_points(),
                                        f.singular_endpoints(), quad_tol);
    return r.diverged ? kInf : std::max(r.value, 0.0);
  }

  const double a = alpha.value();
  auto integrand = [&f, a](double y) {
    double v = f(y);
    return v > 0.0 ? std::pow(v, a) : 0.0;
  };
  IntegralResult r = integrate_pieces(integrand, 0.0, 1.0, f.split_points(),
                                      f.singular_endpoints(), quad_tol);
  if (r.diverged) {
    if (a > 1.0) return kInf;
    throw QuadratureFailure("power integral reported divergence below order one");
  }
  return std::max(std::log(r.value) / (a - 1.0), 0.0);
}

double shift_family_capacity(const std::vector<DensityOnCircle>& fs, Order alpha,
                             double quad_tol) {
  if (fs.empty()) throw DomainError("family must contain at least one density");
  double best = -kInf;
  for (const auto& f : fs) best = std::max(best, shift_capacity(f, alpha, quad_tol));
  return best;
}

void PoissonFamilySpec::check() const {
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  if (!(floor >= 0.0)) throw DomainError("intensity floor must be non-negative");
  if (has_envelope) {
    envelope.check(horizon);
    if (envelope.min_value() < floor)
      throw DomainError("envelope must dominate the intensity floor");
  } else {
    if (!(ceiling >= floor)) throw DomainError("ceiling must dominate the floor");
  }
  if (constraint != PoissonConstraintKind::None) {
    double top = has_envelope ? envelope.max_value() : ceiling;
    if (!(mean_value >= floor && mean_value <= top))
      throw DomainError("mean constraint must lie between floor and ceiling");
  }
}

namespace {

void require_finite_positive(Order alpha, const char* who) {
  if (!alpha.is_finite_positive())
    throw OrderOutOfRange(std::string(who) + " needs a finite positive order");
}

// Density of the constant-intensity divergence per unit time.
double poisson_divergence_density(double f, double g, double a) {
  if (f < 0.0 || g < 0.0) throw DomainError("intensities must be non-negative");
  if (a == 1.0) {
    if (f == 0.0) return g;
    if (g == 0.0) return kInf;
    return f * std::log(f / g) - f + g;
  }
  if (f == 0.0) return g;
  if (g == 0.0) return a < 1.0 ? f * a / (1.0 - a) : kInf;
  double cross = std::exp(a * std::log(f) + (1.0 - a) * std::log(g));
  return (cross - f) / (a - 1.0) - f + g;
}

}  // namespace

double poisson_divergence_const(double f, double g, double horizon, Order alpha) {
  require_finite_positive(alpha, "Poisson divergence");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  return poisson_divergence_density(f, g, alpha.value()) * horizon;
}

double poisson_divergence(const IntensityFn& f, const IntensityFn& g, double horizon,
                          Order alpha, double quad_tol) {
  require_finite_positive(alpha, "Poisson divergence");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  const double a = alpha.value();
  // Scan for outputs where the density is infinite (f > 0 on a g-null set at
  // orders >= 1); evaluators are assumed piecewise-smooth.
  for (int i = 0; i <= 512; ++i) {
    double t = horizon * (static_cast<double>(i) + 0.5) / 513.0;
    if (poisson_divergence_density(f(t), g(t), a) == kInf) return kInf;
  }
  auto integrand = [&](double t) { return poisson_divergence_density(f(t), g(t), a); };
  return integrate_adaptive(integrand, 0.0, horizon, quad_tol);
}

namespace {

// log(w1 * b^a + w0 * a0^a) evaluated stably; weights in [0,1].
double log_power_mix(double w1, double hi, double w0, double lo, double a) {
  LogSumExpAccumulator acc;
  if (w1 > 0.0 && hi > 0.0) acc.add(std::log(w1) + a * std::log(hi));
  if (w0 > 0.0 && lo > 0.0) acc.add(std::log(w0) + a * std::log(lo));
  return acc.value();
}

}  // namespace

PoissonCapacity poisson_mean_capacity(double horizon, double floor, double ceiling,
                                      double mean, Order alpha) {
  require_finite_positive(alpha, "Poisson mean capacity");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  if (!(0.0 <= floor && floor <= mean && mean <= ceiling))
    throw DomainError("mean must lie between floor and ceiling");

  const double a0 = floor, b = ceiling, c = mean;
  if (a0 == b || c == a0 || c == b) return {0.0, c};

  const double w1 = (c - a0) / (b - a0);
  const double w0 = (b - c) / (b - a0);
  const double a = alpha.value();

  double capacity, x;
  if (alpha.is_one()) {
    x = c;
    double term_hi = w1 * b * std::log(b / c);
    double term_lo = a0 > 0.0 ? w0 * a0 * std::log(a0 / c) : 0.0;
    capacity = (term_hi + term_lo) * horizon;
  } else {
    x = std::exp(log_power_mix(w1, b, w0, a0, a) / a);
    capacity = a / (a - 1.0) * (x - c) * horizon;
  }
  capacity = std::max(capacity, 0.0);

  double mixture = poisson_mean_capacity_mixture_form(horizon, floor, ceiling, mean, alpha);
  if (std::abs(mixture - capacity) > 1e-10 * std::max(1.0, std::abs(capacity)))
    throw DomainError("mean-capacity mixture cross-check failed");
  return {capacity, x};
}

double poisson_mean_capacity_mixture_form(double horizon, double floor, double ceiling,
                                          double mean, Order alpha) {
  require_finite_positive(alpha, "Poisson mean capacity");
  const double a0 = floor, b = ceiling, c = mean;
  if (a0 == b || c == a0 || c == b) return 0.0;
  const double w1 = (c - a0) / (b - a0);
  const double w0 = (b - c) / (b - a0);
  double x;
  if (alpha.is_one()) {
    x = c;
  } else {
    x = std::exp(log_power_mix(w1, b, w0, a0, alpha.value()) / alpha.value());
  }
  return w1 * poisson_divergence_const(b, x, horizon, alpha) +
         w0 * poisson_divergence_const(a0, x, horizon, alpha);
}

double poisson_optimal_mean(double floor, double ceiling, Order alpha) {
  require_finite_positive(alpha, "Poisson optimal mean");
  const double a0 = floor, b = ceiling;
  if (!(0.0 <= a0 && a0 <= b)) throw DomainError("floor must not exceed ceiling");
  if (a0 == b) return a0;

  double c;
  if (alpha.is_one()) {
    // e^{-1} b^{b/(b-a)} a^{-a/(b-a)}
    double expo = b / (b - a0) * std::log(b) - (a0 > 0.0 ? a0 / (b - a0) * std::log(a0) : 0.0);
    c = std::exp(expo - 1.0);
  } else {
    const double a = alpha.value();
    // r = (a0/b)^alpha; the two terms written scale-free in b.
    double r = a0 > 0.0 ? std::exp(a * std::log(a0 / b)) : 0.0;
    double first = std::exp((a / (1.0 - a)) * std::log(a) +
                            (1.0 / (1.0 - a)) * (std::log1p(-a0 / b) - std::log1p(-r))) *
                   b;
    double second = (a0 - b * r) / (1.0 - r);
    c = first + second;
  }
  return std::min(std::max(c, a0), b);
}

PoissonCapacity poisson_constrained_capacity(double horizon, double floor, double ceiling,
                                             double mean, PoissonConstraintKind kind,
                                             Order alpha) {
  require_finite_positive(alpha, "Poisson constrained capacity");
  if (kind == PoissonConstraintKind::None)
    return poisson_bounded_capacity(horizon, floor, ceiling, alpha);
  if (kind == PoissonConstraintKind::MeanEq)
    return poisson_mean_capacity(horizon, floor, ceiling, mean, alpha);

  double critical = poisson_optimal_mean(floor, ceiling, alpha);
  double effective = kind == PoissonConstraintKind::MeanLe ? std::min(mean, critical)
                                                           : std::max(mean, critical);
  return poisson_mean_capacity(horizon, floor, ceiling, effective, alpha);
}

PoissonCapacity poisson_bounded_capacity(double horizon, double floor, double ceiling,
                                         Order alpha) {
  require_finite_positive(alpha, "Poisson bounded capacity");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  if (!(0.0 <= floor && floor <= ceiling))
    throw DomainError("floor must not exceed ceiling");
  const double a0 = floor, b = ceiling;
  if (a0 == b) return {0.0, a0};

  double capacity, x;
  if (alpha.is_one()) {
    double expo = b / (b - a0) * std::log(b) - (a0 > 0.0 ? a0 / (b - a0) * std::log(a0) : 0.0);
    x = std::exp(expo - 1.0);
    double cross = a0 > 0.0 ? a0 * b / (b - a0) * std::log(b / a0) : 0.0;
    capacity = (x - cross) * horizon;
  } else {
    const double a = alpha.value();
    double r = a0 > 0.0 ? std::exp(a * std::log(a0 / b)) : 0.0;
    // (alpha (b-a0) / (b^alpha - a0^alpha))^(1/(1-alpha)), written scale-free in b.
    double base_log = std::log(a) + std::log1p(-a0 / b) - std::log1p(-r);
    x = std::exp(base_log / (1.0 - a)) * b;
    double second = (a0 - b * r) / (1.0 - r);
    capacity = (x - a / (a - 1.0) * second) * horizon;
  }
  return {std::max(capacity, 0.0), x};
}

PoissonProductCapacity poisson_product_capacity(double horizon, double floor,
                                                const PiecewiseConstant& envelope,
                                                Order alpha, double quad_tol) {
  (void)quad_tol;
  require_finite_positive(alpha, "Poisson product capacity");
  if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
  envelope.check(horizon);
  if (envelope.min_value() < floor)
    throw DomainError("envelope must dominate the intensity floor");

  PoissonProductCapacity out;
  out.capacity = 0.0;
  out.center_intensity.breaks = envelope.breaks;
  out.center_intensity.values.reserve(envelope.values.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < envelope.values.size(); ++i) {
    double end = i < envelope.breaks.size() ? envelope.breaks[i] : horizon;
    PoissonCapacity seg = poisson_bounded_capacity(end - prev, floor, envelope.values[i], alpha);
    out.capacity += seg.capacity;
    out.center_intensity.values.push_back(seg.center_intensity);
    prev = end;
  }
  return out;
}

double poisson_product_capacity_quad(double horizon, double floor, const IntensityFn& envelope,
                                     Order alpha, double quad_tol) {
  require_finite_positive(alpha, "Poisson product capacity");
  auto integrand = [&](double t) {
    double g = envelope(t);
    if (g < floor) throw DomainError("envelope must dominate the intensity floor");
    return poisson_bounded_capacity(1.0, floor, g, alpha).capacity;
  };
  return integrate_adaptive(integrand, 0.0, horizon, quad_tol);
}

SamplePath poisson_sample(const IntensityFn& f, double intensity_bound, double horizon,
                          std::uint64_t seed) {
  if (!(intensity_bound >= 0.0))
    throw UnboundedIntensity("a finite non-negative thinning bound is required");
  SamplePath path;
  if (intensity_bound == 0.0) return path;
  rng::Engine eng(seed);
  double t = 0.0;
  while (true) {
    t += eng.exponential(intensity_bound);
    if (t > horizon) break;
    double v = f(t);
    if (v > intensity_bound * (1.0 + 1e-12))
      throw UnboundedIntensity("intensity exceeds the declared thinning bound");
    if (eng.uniform() * intensity_bound <= v) path.arrivals.push_back(t);
  }
  return path;
}

double poisson_log_rnd(const SamplePath& path, const IntensityFn& f, double horizon,
                       double quad_tol) {
  double log_prod = 0.0;
  for (double tau : path.arrivals) {
    if (!(tau > 0.0 && tau <= horizon)) throw DomainError("arrival outside (0, horizon]");
    double v = f(tau);
    if (v <= 0.0) return -kInf;
    log_prod += std::log(v);
  }
  double integral = integrate_adaptive(f, 0.0, horizon, quad_tol);
  return log_prod + horizon - integral;
}

double poisson_rnd(const SamplePath& path, const IntensityFn& f, double horizon,
                   double quad_tol) {
  double lg = poisson_log_rnd(path, f, horizon, quad_tol);
  return lg == -kInf ? 0.0 : std::exp(lg);
}

McEstimate poisson_mc_divergence(const IntensityFn& f, double f_bound, const IntensityFn& g,
                                 double g_bound, double horizon, Order alpha,
                                 std::size_t n_samples, std::uint64_t seed) {
  if (alpha.is_one() || alpha.is_zero() || alpha.is_infinity() || alpha.value() > 3.0)
    throw OrderOutOfRange("Monte-Carlo divergence serves orders in (0,1) or (1,3]");
  if (n_samples < 2) throw DomainError("need at least two samples");
  if (!(f_bound >= 0.0) || !(g_bound >= 0.0))
    throw UnboundedIntensity("intensity bounds required for the thinning sampler");
  const double a = alpha.value();

  const double int_f = integrate_adaptive(f, 0.0, horizon, 1e-10);
  const double int_g = integrate_adaptive(g, 0.0, horizon, 1e-10);

  // The relative variance of z = (dW_f/dnu)^alpha (dW_g/dnu)^(1-alpha) under
  // the unit-rate reference is exp(int (h-1)^2) - 1 for h = f^alpha g^(1-alpha).
  // Rare heavy-tail paths dominate the mean when that is large, and the
  // empirical variance cannot see them; refuse such instances up front.
  const double tail_stat = integrate_adaptive(
      [&](double t) {
        double vf = f(t), vg = g(t);
        double h = (vf > 0.0 && vg > 0.0)
                       ? std::exp(a * std::log(vf) + (1.0 - a) * std::log(vg))
                       : 0.0;
        return (h - 1.0) * (h - 1.0);
      },
      0.0, horizon, 1e-8);
  double rel_var = tail_stat > 40.0 ? kInf : std::expm1(tail_stat);
  if (std::sqrt(std::max(rel_var, 0.0) / static_cast<double>(n_samples)) > 0.5)
    throw VarianceBlowup("inner-mean standard error exceeds half its value");

  // Welford accumulation of z under the unit-rate reference.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    SamplePath path = poisson_sample([](double) { return 1.0; }, 1.0, horizon,
                                     rng::hash_combine(seed, i));
    double lf = horizon - int_f, lg_ = horizon - int_g;
    for (double tau : path.arrivals) {
      double vf = f(tau), vg = g(tau);
      lf += vf > 0.0 ? std::log(vf) : -kInf;
      lg_ += vg > 0.0 ? std::log(vg) : -kInf;
    }
    double lz = a * lf + (1.0 - a) * lg_;
    double z = (lf == -kInf || lg_ == -kInf) ? 0.0 : std::exp(lz);
    double delta = z - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (z - mean);
  }
  double var = m2 / static_cast<double>(n_samples - 1);
  double se_mean = std::sqrt(var / static_cast<double>(n_samples));
  if (mean <= 0.0) return {kInf, kInf, n_samples};
  if (se_mean > 0.5 * mean)
    throw VarianceBlowup("inner-mean standard error exceeds half its value");
  double estimate = std::log(mean) / (a - 1.0);
  double stderr_ = se_mean / (std::abs(a - 1.0) * mean);
  return {estimate, stderr_, n_samples};
}

McEstimate poisson_mc_divergence_const(double f, double g, double horizon, Order alpha,
                                       std::size_t n_samples, std::uint64_t seed) {
  return poisson_mc_divergence([f](double) { return f; }, f, [g](double) { return g; }, g,
                               horizon, alpha, n_samples, seed);
}

FiniteChannel poisson_discretize(const PoissonFamilySpec& spec, std::size_t n_bins,
                                 std::size_t n_levels, const DiscretizeOptions& opt) {
  spec.check();
  if (spec.has_envelope)
    throw DomainError("discretization needs a constant ceiling");
  if (n_bins == 0 || n_levels == 0) throw DomainError("bins and levels must be positive");

  const double a0 = spec.floor, b = spec.ceiling;
  std::vector<double> levels(n_levels);
  if (n_levels == 1) {
    levels[0] = a0;
  } else {
    for (std::size_t i = 0; i < n_levels; ++i)
      levels[i] = a0 + (b - a0) * static_cast<double>(i) / static_cast<double>(n_levels - 1);
  }

  const std::size_t symbols = opt.max_count + 2;  // counts 0..K plus overflow
  double out_cols = std::pow(static_cast<double>(symbols), static_cast<double>(n_bins));
  double profiles = std::pow(static_cast<double>(n_levels), static_cast<double>(n_bins));
  if (out_cols > static_cast<double>(opt.output_budget) || profiles > 1e7)
    throw BudgetExceeded("bin/level grid exceeds the discretization budget");
  const std::size_t m = static_cast<std::size_t>(out_cols);
  const std::size_t n_profiles = static_cast<std::size_t>(profiles);

  // Constraint filter on the profile average intensity.
  auto feasible = [&](double mean) {
    switch (spec.constraint) {
      case PoissonConstraintKind::None:
        return true;
      case PoissonConstraintKind::MeanEq:
        return std::abs(mean - spec.mean_value) <= 1e-9 * std::max(1.0, b);
      case PoissonConstraintKind::MeanLe:
        return mean <= spec.mean_value + 1e-12;
      case PoissonConstraintKind::MeanGe:
        return mean >= spec.mean_value - 1e-12;
    }
    return false;
  };

  std::vector<std::vector<std::size_t>> kept;
  std::vector<std::size_t> digits(n_bins, 0);
  for (std::size_t idx = 0; idx < n_profiles; ++idx) {
    std::size_t rem = idx;
    double sum = 0.0;
    for (std::size_t j = 0; j < n_bins; ++j) {
      digits[j] = rem % n_levels;
      rem /= n_levels;
      sum += levels[digits[j]];
    }
    if (feasible(sum / static_cast<double>(n_bins))) kept.push_back(digits);
  }
  if (kept.empty()) throw InfeasibleConstraint("no intensity profile meets the constraint");

  if (kept.size() > opt.row_cap) {
    std::uint64_t seed = rng::hash_combine(rng::fnv1a("discretize"),
                                           rng::fnv1a_doubles({spec.horizon, a0, b,
                                                               static_cast<double>(n_bins),
                                                               static_cast<double>(n_levels)}));
    rng::Engine eng(seed);
    for (std::size_t i = 0; i < opt.row_cap; ++i) {
      std::size_t j = i + static_cast<std::size_t>(eng.below(kept.size() - i));
      std::swap(kept[i], kept[j]);
    }
    kept.resize(opt.row_cap);
  }

  // Per (bin level) count pmf with the overflow symbol as exact complement.
  const double dt = spec.horizon / static_cast<double>(n_bins);
  std::vector<std::vector<double>> count_pmf(n_levels, std::vector<double>(symbols, 0.0));
  for (std::size_t l = 0; l < n_levels; ++l) {
    double lambda = levels[l] * dt;
    double term = std::exp(-lambda);
    double cum = 0.0;
    for (std::size_t k = 0; k <= opt.max_count; ++k) {
      count_pmf[l][k] = term;
      cum += term;
      term *= lambda / static_cast<double>(k + 1);
    }
    count_pmf[l][symbols - 1] = std::max(1.0 - cum, 0.0);
  }

  std::vector<Pmf> rows;
  std::vector<std::string> labels;
  rows.reserve(kept.size());
  for (const auto& profile : kept) {
    std::vector<double> row(m, 1.0);
    std::size_t stride = 1;
    for (std::size_t j = 0; j < n_bins; ++j) {
      const auto& pmf = count_pmf[profile[j]];
      for (std::size_t y = 0; y < m; ++y) row[y] *= pmf[(y / stride) % symbols];
      stride *= symbols;
    }
    double total = 0.0;
    for (double v : row) total += v;
    for (auto& v : row) v /= total;
    rows.push_back(Pmf::validated(std::move(row)));

    std::string label;
    for (std::size_t j = 0; j < n_bins; ++j) {
      if (j) label += ",";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", levels[profile[j]]);
      label += buf;
    }
    labels.push_back(std::move(label));
  }
  return FiniteChannel(std::move(rows), std::move(labels));
}

}  // namespace renyi
