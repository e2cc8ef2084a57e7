#include "renyi/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <cstdlib>

#include "renyi/numeric.hpp"
#include "renyi/parallel.hpp"
#include "renyi/rng.hpp"

namespace renyi {

namespace {

struct LogChannel {
  std::size_t n, m;
  std::vector<std::vector<double>> log_rows;

  explicit LogChannel(const FiniteChannel& ch)
      : n(ch.input_size()), m(ch.output_size()), log_rows(n, std::vector<double>(m)) {
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t y = 0; y < m; ++y) log_rows[w][y] = safe_log(ch.row(w)[y]);
  }
};

void log_normalize(std::vector<double>& logp) {
  double z = log_sum_exp(logp);
  for (auto& x : logp) x -= z;
}

// One certificate evaluation at a log-domain prior: the candidate center
// q = m_alpha / ||m_alpha||, the per-row divergences to it, the information
// lower bound and the relative-radius upper bound.
struct Certificate {
  double lower;
  double upper;
  double log_mean_norm;  // log ||m_alpha||; zero at order one
  std::vector<double> log_center;
  std::vector<double> divergences;
};

Certificate evaluate(const LogChannel& lc, const std::vector<double>& logp, Order alpha) {
  Certificate cert;
  cert.log_center.assign(lc.m, -kInf);
  cert.divergences.assign(lc.n, 0.0);

  if (alpha.is_one()) {
    for (std::size_t y = 0; y < lc.m; ++y) {
      LogSumExpAccumulator acc;
      for (std::size_t w = 0; w < lc.n; ++w) {
        if (lc.log_rows[w][y] > -kInf) acc.add(logp[w] + lc.log_rows[w][y]);
      }
      cert.log_center[y] = acc.value();
    }
    double z = log_sum_exp(cert.log_center);  // zero up to rounding
    for (auto& x : cert.log_center) x -= z;
    double info = 0.0;
    double worst = 0.0;
    for (std::size_t w = 0; w < lc.n; ++w) {
      double d = 0.0;
      for (std::size_t y = 0; y < lc.m; ++y) {
        double lw = lc.log_rows[w][y];
        if (lw > -kInf) d += std::exp(lw) * (lw - cert.log_center[y]);
      }
      cert.divergences[w] = d;
      info += std::exp(logp[w]) * d;
      worst = std::max(worst, d);
    }
    cert.lower = std::max(info, 0.0);
    cert.upper = std::max(worst, cert.lower);
    cert.log_mean_norm = 0.0;
    return cert;
  }

  const double a = alpha.value();
  std::vector<double> log_mean(lc.m, -kInf);
  for (std::size_t y = 0; y < lc.m; ++y) {
    LogSumExpAccumulator acc;
    for (std::size_t w = 0; w < lc.n; ++w) {
      if (lc.log_rows[w][y] > -kInf) acc.add(logp[w] + a * lc.log_rows[w][y]);
    }
    double ls = acc.value();
    log_mean[y] = ls == -kInf ? -kInf : ls / a;
  }
  double log_norm = log_sum_exp(log_mean);
  cert.log_mean_norm = log_norm;
  cert.lower = std::max(a / (a - 1.0) * log_norm, 0.0);
  for (std::size_t y = 0; y < lc.m; ++y)
    cert.log_center[y] = log_mean[y] == -kInf ? -kInf : log_mean[y] - log_norm;

  double worst = 0.0;
  for (std::size_t w = 0; w < lc.n; ++w) {
    cert.divergences[w] =
        renyi_divergence_log(lc.log_rows[w], cert.log_center, alpha);
    worst = std::max(worst, cert.divergences[w]);
  }
  cert.upper = std::max(worst, cert.lower);
  return cert;
}

Pmf center_from_log(const std::vector<double>& log_center) {
  std::vector<double> q(log_center.size());
  double total = 0.0;
  for (std::size_t y = 0; y < q.size(); ++y) {
    q[y] = log_center[y] == -kInf ? 0.0 : std::exp(log_center[y]);
    total += q[y];
  }
  for (auto& x : q) x /= total;
  return Pmf::validated(std::move(q));
}

Prior prior_from_log(const std::vector<double>& logp) {
  std::vector<double> p(logp.size());
  double total = 0.0;
  for (std::size_t w = 0; w < p.size(); ++w) {
    p[w] = logp[w] == -kInf ? 0.0 : std::exp(logp[w]);
    total += p[w];
  }
  for (auto& x : p) x /= total;
  return Prior::validated(std::move(p));
}

CapacitySolution make_solution(Order alpha, const Certificate& cert,
                               const std::vector<double>& logp, std::size_t iterations,
                               double tol) {
  double lower = cert.lower;
  double upper = std::max(cert.upper, lower);
  CapacitySolution sol{alpha,
                       0.5 * (lower + upper),
                       lower,
                       upper,
                       upper - lower,
                       center_from_log(cert.log_center),
                       prior_from_log(logp),
                       iterations,
                       upper - lower <= tol};
  return sol;
}

// Blahut-Arimoto style multiplicative ascent in the log domain. The step is
// halved whenever the information lower bound would decrease; every iterate
// yields a valid two-sided bracket regardless.
CapacitySolution solve_from_start(const LogChannel& lc, Order alpha,
                                  std::vector<double> logp, const SolverOptions& opt) {
  double step = 1.0;
  Certificate cert = evaluate(lc, logp, alpha);
  Certificate best_cert = cert;
  std::vector<double> best_logp = logp;
  std::size_t it = 0;

  for (; it < opt.max_iter; ++it) {
    if (cert.upper - cert.lower <= opt.tol) break;

    std::vector<double> trial = logp;
    Certificate trial_cert;
    for (int halvings = 0;; ++halvings) {
      trial = logp;
      for (std::size_t w = 0; w < lc.n; ++w) trial[w] += step * cert.divergences[w];
      log_normalize(trial);
      trial_cert = evaluate(lc, trial, alpha);
      if (trial_cert.lower >= cert.lower - 1e-13 || halvings >= 60) break;
      step *= 0.5;
    }
    logp = std::move(trial);
    cert = std::move(trial_cert);
    step = std::min(1.0, step * 1.25);

    if (cert.upper - cert.lower < best_cert.upper - best_cert.lower) {
      best_cert = cert;
      best_logp = logp;
    }
  }

  if (cert.upper - cert.lower <= best_cert.upper - best_cert.lower) {
    best_cert = cert;
    best_logp = logp;
  }
  return make_solution(alpha, best_cert, best_logp, it, opt.tol);
}

}  // namespace

std::uint64_t channel_hash(const FiniteChannel& ch) {
  std::uint64_t h = rng::fnv1a("finite-channel");
  h = rng::hash_combine(h, ch.input_size());
  h = rng::hash_combine(h, ch.output_size());
  for (const auto& row : ch.rows) h = rng::fnv1a_doubles(row.weights(), h);
  return h;
}

double relative_radius(const FiniteChannel& ch, const FiniteMeasure& q, Order alpha) {
  if (q.size() != ch.output_size())
    throw AlphabetMismatch("reference measure must live on the output alphabet");
  if (q.is_zero()) throw ZeroMeasure("reference measure must be non-zero");
  double worst = -kInf;
  for (const auto& row : ch.rows)
    worst = std::max(worst, renyi_divergence(row.measure(), q, alpha));
  return worst;
}

std::vector<CapacitySolution> solve_capacity_restarts(const FiniteChannel& ch, Order alpha,
                                                      const SolverOptions& opt) {
  if (alpha.is_zero())
    throw OrderOutOfRange("capacity solving refuses order zero; use per-prior information");

  if (alpha.is_infinity()) {
    const std::size_t m = ch.output_size();
    std::vector<double> envelope(m, 0.0);
    for (const auto& row : ch.rows)
      for (std::size_t y = 0; y < m; ++y) envelope[y] = std::max(envelope[y], row[y]);
    double norm = 0.0;
    for (double v : envelope) norm += v;
    std::vector<double> center(m);
    for (std::size_t y = 0; y < m; ++y) center[y] = envelope[y] / norm;
    Pmf center_pmf = Pmf::validated(std::move(center));
    Prior prior = Prior::uniform(ch.input_size());
    double lower = renyi_information(ch, prior, alpha);
    double upper = std::max(relative_radius(ch, center_pmf.measure(), alpha), lower);
    return {CapacitySolution{alpha, 0.5 * (lower + upper), lower, upper, upper - lower,
                             std::move(center_pmf), std::move(prior), 0,
                             upper - lower <= opt.tol}};
  }

  LogChannel lc(ch);
  std::vector<CapacitySolution> solutions;
  std::vector<double> uniform_start(lc.n, -std::log(static_cast<double>(lc.n)));
  solutions.push_back(solve_from_start(lc, alpha, uniform_start, opt));

  const bool low_order = !alpha.is_one() && alpha.value() < 1.0;
  if (low_order && lc.n > 1) {
    std::uint64_t base = channel_hash(ch);
    std::uint64_t abits;
    double av = alpha.value();
    std::memcpy(&abits, &av, sizeof(abits));
    base = rng::hash_combine(base, abits);
    for (std::size_t k = 0; k < opt.restarts; ++k) {
      rng::Engine eng(rng::hash_combine(base, k + 1));
      auto p = eng.dirichlet(lc.n);
      std::vector<double> logp(lc.n);
      for (std::size_t w = 0; w < lc.n; ++w) logp[w] = std::log(p[w]);
      log_normalize(logp);
      solutions.push_back(solve_from_start(lc, alpha, logp, opt));
    }
  }
  return solutions;
}

CapacitySolution solve_capacity(const FiniteChannel& ch, Order alpha,
                                const SolverOptions& opt) {
  auto solutions = solve_capacity_restarts(ch, alpha, opt);
  std::size_t best = 0;
  for (std::size_t i = 1; i < solutions.size(); ++i) {
    if (solutions[i].gap < solutions[best].gap ||
        (solutions[i].gap == solutions[best].gap &&
         solutions[i].lower_bound > solutions[best].lower_bound))
      best = i;
  }
  return solutions[best];
}

CapacitySolution solve_capacity(const FiniteChannel& ch, Order alpha, double tol,
                                std::size_t max_iter) {
  SolverOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_capacity(ch, alpha, opt);
}

namespace {

void simplex_grid_recurse(std::size_t dims_left, std::size_t budget,
                          std::vector<double>& point, double resolution,
                          const std::vector<std::vector<double>>& log_rows, Order alpha,
                          double& best) {
  const std::size_t idx = point.size() - dims_left;
  if (dims_left == 1) {
    point[idx] = static_cast<double>(budget) / resolution;
    std::vector<double> logq(point.size());
    for (std::size_t y = 0; y < point.size(); ++y) logq[y] = safe_log(point[y]);
    double worst = -kInf;
    for (const auto& lw : log_rows) {
      worst = std::max(worst, renyi_divergence_log(lw, logq, alpha));
      if (worst >= best) break;
    }
    best = std::min(best, worst);
    return;
  }
  for (std::size_t k = 0; k <= budget; ++k) {
    point[idx] = static_cast<double>(k) / resolution;
    simplex_grid_recurse(dims_left - 1, budget - k, point, resolution, log_rows, alpha, best);
  }
}

}  // namespace

double radius_bruteforce(const FiniteChannel& ch, Order alpha, std::size_t grid_resolution) {
  if (ch.output_size() > 4)
    throw AlphabetTooLarge("brute-force radius is limited to output alphabets of size 4");
  if (alpha.is_zero()) throw OrderOutOfRange("brute-force radius needs a positive order");
  if (grid_resolution == 0) throw DomainError("grid resolution must be positive");

  LogChannel lc(ch);
  std::vector<double> point(ch.output_size(), 0.0);
  double best = kInf;
  simplex_grid_recurse(ch.output_size(), grid_resolution, point,
                       static_cast<double>(grid_resolution), lc.log_rows, alpha, best);
  // The rows themselves join the grid as candidate references, so a
  // single-row family reports zero exactly at any resolution.
  for (const auto& logq : lc.log_rows) {
    double worst = -kInf;
    for (const auto& lw : lc.log_rows) {
      worst = std::max(worst, renyi_divergence_log(lw, logq, alpha));
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  }
  return best;
}

CurveResult capacity_curve(const FiniteChannel& ch, const std::vector<Order>& alphas,
                           double tol, std::size_t max_iter) {
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    double a = alphas[i].value(), b = alphas[i + 1].value();
    if (!(a <= b)) throw DomainError("order grid must be sorted");
  }
  for (const auto& a : alphas) {
    if (a.is_zero()) throw OrderOutOfRange("capacity curve orders must be positive");
  }

  CurveResult result;
  result.points = parallel_map(alphas.size(), [&](std::size_t i) {
    return solve_capacity(ch, alphas[i], tol, max_iter);
  });

  auto& d = result.diagnostics;
  const double slack = 2.0 * tol;
  auto record = [&](std::size_t& counter, double violation) {
    if (violation > slack) {
      ++counter;
      d.worst_excess = std::max(d.worst_excess, violation - slack);
    }
  };

  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    record(d.monotonicity_violations,
           result.points[i].capacity - result.points[i + 1].capacity);
  }
  for (std::size_t i = 0; i + 2 < result.points.size(); ++i) {
    const auto &p0 = result.points[i], &p1 = result.points[i + 1], &p2 = result.points[i + 2];
    if (p0.order.is_infinity() || p1.order.is_infinity() || p2.order.is_infinity()) continue;
    double a0 = p0.order.value(), a1 = p1.order.value(), a2 = p2.order.value();
    if (a0 <= 1.0 || a2 <= a0) continue;
    double g0 = (a0 - 1.0) * p0.capacity;
    double g1 = (a1 - 1.0) * p1.capacity;
    double g2 = (a2 - 1.0) * p2.capacity;
    double t = (a1 - a0) / (a2 - a0);
    record(d.convexity_violations, g1 - ((1.0 - t) * g0 + t * g2));
  }
  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    const auto &p0 = result.points[i], &p1 = result.points[i + 1];
    if (p0.order.is_infinity() || p1.order.is_infinity()) continue;
    double a0 = p0.order.value(), a1 = p1.order.value();
    if (a0 >= 1.0 || a1 >= 1.0 || a1 <= a0) continue;
    double h0 = (1.0 - a0) / a0 * p0.capacity;
    double h1 = (1.0 - a1) / a1 * p1.capacity;
    record(d.low_order_transform_violations, h1 - h0);
  }

  // Lipschitz continuity of the curve on a compact window of the finite
  // range, with the uniform constant implied by the top-order capacity.
  double eta = 0.0, c_eta = 0.0;
  for (const auto& pt : result.points) {
    if (!pt.order.is_infinity() && std::isfinite(pt.capacity) && pt.order.value() > eta) {
      eta = pt.order.value();
      c_eta = pt.capacity;
    }
  }
  if (eta > 0.0) {
    double eps_eta = eta <= 1.0 ? eta / 2.0 : (eta - 1.0) / (8.0 * eta);
    double gamma_eta = eta <= 1.0
                           ? c_eta
                           : eta * c_eta + 2.5 * std::exp(2.0 * c_eta) / std::exp(2.0);
    double lipschitz = gamma_eta / (eps_eta * eps_eta);
    const double lip_slack = 10.0 * tol;
    for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
      const auto &p0 = result.points[i], &p1 = result.points[i + 1];
      if (p0.order.is_infinity() || p1.order.is_infinity()) continue;
      double a0 = p0.order.value(), a1 = p1.order.value();
      if (a0 < eps_eta || a1 > eta - eps_eta || a1 <= a0) continue;
      double jump = std::abs(p1.capacity - p0.capacity);
      if (jump > lipschitz * (a1 - a0) + lip_slack) {
        ++d.lipschitz_violations;
        d.worst_excess =
            std::max(d.worst_excess, jump - lipschitz * (a1 - a0) - lip_slack);
      }
    }
  }
  return result;
}

ConstraintSet ConstraintSet::unconstrained() { return ConstraintSet{}; }

ConstraintSet ConstraintSet::support_restriction(std::vector<std::size_t> indices) {
  ConstraintSet c;
  c.kind = Kind::SupportRestriction;
  c.support = std::move(indices);
  return c;
}

ConstraintSet ConstraintSet::linear_cost(std::vector<double> costs, double budget,
                                         Direction dir) {
  ConstraintSet c;
  c.kind = Kind::LinearCost;
  c.costs = std::move(costs);
  c.budget = budget;
  c.direction = dir;
  return c;
}

void ConstraintSet::check_feasible(const FiniteChannel& ch) const {
  switch (kind) {
    case Kind::Unconstrained:
      return;
    case Kind::SupportRestriction: {
      if (support.empty())
        throw InfeasibleConstraint("support restriction must keep at least one row");
      for (std::size_t w : support) {
        if (w >= ch.input_size())
          throw InfeasibleConstraint("support restriction index out of range");
      }
      return;
    }
    case Kind::LinearCost: {
      if (costs.size() != ch.input_size())
        throw InfeasibleConstraint("cost vector must have one entry per row");
      double lo = *std::min_element(costs.begin(), costs.end());
      double hi = *std::max_element(costs.begin(), costs.end());
      if (direction == Direction::LessEqual && lo > budget)
        throw InfeasibleConstraint("no prior meets the cost budget");
      if (direction == Direction::GreaterEqual && hi < budget)
        throw InfeasibleConstraint("no prior reaches the cost floor");
      return;
    }
  }
}

namespace {

// Exact optimum of a linear objective over the simplex intersected with one
// linear cost constraint: attained at a feasible vertex or on a two-row
// mixture sitting exactly on the cost boundary.
double optimize_linear_with_cost(const std::vector<double>& value,
                                 const std::vector<double>& cost, double budget,
                                 ConstraintSet::Direction dir, bool maximize) {
  const std::size_t n = value.size();
  auto feasible = [&](double c) {
    return dir == ConstraintSet::Direction::LessEqual ? c <= budget : c >= budget;
  };
  double best = maximize ? -kInf : kInf;
  auto consider = [&](double v) { best = maximize ? std::max(best, v) : std::min(best, v); };

  for (std::size_t w = 0; w < n; ++w) {
    if (feasible(cost[w])) consider(value[w]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double lo = std::min(cost[i], cost[j]), hi = std::max(cost[i], cost[j]);
      if (!(lo < budget && budget < hi)) continue;
      double theta = (budget - cost[j]) / (cost[i] - cost[j]);
      consider(theta * value[i] + (1.0 - theta) * value[j]);
    }
  }
  return best;
}

// KL projection of a log-domain prior onto the cost-equality slice:
// exponential tilt with a signed multiplier found by expanding bisection.
void project_cost_equality(std::vector<double>& logp, const std::vector<double>& cost,
                           double budget) {
  auto mean_cost = [&](double lambda) {
    std::vector<double> tilted(logp.size());
    for (std::size_t w = 0; w < logp.size(); ++w) tilted[w] = logp[w] - lambda * cost[w];
    double z = log_sum_exp(tilted);
    double c = 0.0;
    for (std::size_t w = 0; w < logp.size(); ++w) c += std::exp(tilted[w] - z) * cost[w];
    return c;
  };
  double lo = 0.0, hi = 0.0;
  if (mean_cost(0.0) > budget) {
    hi = 1.0;
    for (int i = 0; i < 200 && mean_cost(hi) > budget; ++i) hi *= 2.0;
  } else {
    lo = -1.0;
    for (int i = 0; i < 200 && mean_cost(lo) < budget; ++i) lo *= 2.0;
  }
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mean_cost(mid) > budget)
      lo = mid;
    else
      hi = mid;
  }
  double lambda = 0.5 * (lo + hi);
  for (std::size_t w = 0; w < logp.size(); ++w) logp[w] -= lambda * cost[w];
  log_normalize(logp);
}

// KL projection of a log-domain prior onto the cost polytope: exponential
// tilting along the cost vector, with the multiplier found by bisection.
void project_cost(std::vector<double>& logp, const std::vector<double>& cost, double budget,
                  ConstraintSet::Direction dir) {
  auto mean_cost = [&](double lambda) {
    std::vector<double> tilted(logp.size());
    double sign = dir == ConstraintSet::Direction::LessEqual ? -1.0 : 1.0;
    for (std::size_t w = 0; w < logp.size(); ++w)
      tilted[w] = logp[w] + sign * lambda * cost[w];
    double z = log_sum_exp(tilted);
    double c = 0.0;
    for (std::size_t w = 0; w < logp.size(); ++w) c += std::exp(tilted[w] - z) * cost[w];
    return c;
  };
  auto ok = [&](double c) {
    return dir == ConstraintSet::Direction::LessEqual ? c <= budget : c >= budget;
  };
  if (ok(mean_cost(0.0))) return;

  double hi = 1.0;
  for (int i = 0; i < 200 && !ok(mean_cost(hi)); ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (ok(mean_cost(mid)))
      hi = mid;
    else
      lo = mid;
  }
  double sign = dir == ConstraintSet::Direction::LessEqual ? -1.0 : 1.0;
  for (std::size_t w = 0; w < logp.size(); ++w) logp[w] += sign * hi * cost[w];
  log_normalize(logp);
}

// Upper certificate for the constrained problem: the exact supremum over the
// feasible polytope of the joint divergence to a fixed reference.
double constrained_upper(const LogChannel& lc, const std::vector<double>& log_center,
                         Order alpha, const ConstraintSet& cons) {
  std::vector<double> div(lc.n);
  for (std::size_t w = 0; w < lc.n; ++w)
    div[w] = renyi_divergence_log(lc.log_rows[w], log_center, alpha);

  if (alpha.is_one()) {
    return optimize_linear_with_cost(div, cons.costs, cons.budget, cons.direction, true);
  }
  const double a = alpha.value();
  std::vector<double> transformed(lc.n);
  for (std::size_t w = 0; w < lc.n; ++w)
    transformed[w] = div[w] == kInf ? (a > 1.0 ? kInf : 0.0)
                                    : std::exp((a - 1.0) * div[w]);
  bool maximize = a > 1.0;
  double opt =
      optimize_linear_with_cost(transformed, cons.costs, cons.budget, cons.direction, maximize);
  if (opt == kInf) return kInf;
  if (opt <= 0.0) return kInf;  // vanishing tilted mass at alpha < 1
  return std::log(opt) / (a - 1.0);
}

// Dual scheme for one linear cost: for a fixed multiplier the tilted
// multiplicative update equalizes D_w -/+ lambda c_w, which is the
// stationarity condition of the Lagrangian; the multiplier is then bisected
// until the cost constraint is met. Both the information lower bound (after
// an exact feasibility tilt) and the polytope supremum upper bound stay
// valid at every candidate, so the certificate carries the result even if
// the bisection path is rough.
CapacitySolution solve_cost_constrained(const FiniteChannel& ch, Order alpha,
                                        const ConstraintSet& cons, const SolverOptions& opt) {
  LogChannel lc(ch);
  const double sign = cons.direction == ConstraintSet::Direction::LessEqual ? -1.0 : 1.0;

  auto prior_cost = [&](const std::vector<double>& logp) {
    double c = 0.0;
    for (std::size_t w = 0; w < lc.n; ++w)
      c += std::exp(logp[w]) * cons.costs[w];
    return c;
  };
  auto feasible = [&](double c) {
    return cons.direction == ConstraintSet::Direction::LessEqual ? c <= cons.budget
                                                                 : c >= cons.budget;
  };

  // Ascent direction for the Lagrangian I(P) + sign * lambda * cost(P).
  // At order one the information gradient is D_w up to a constant, so the
  // classic tilt applies; away from order one the gradient is
  // t_w / ((alpha-1) ||m||) with t_w = exp((alpha-1)(D_w - log||m||)), and
  // the direction is computed in a frame normalized by its largest entry so
  // that the tilt stays representable at extreme orders.
  const bool order_one = alpha.is_one();
  const double a = alpha.value();
  auto ascent_direction = [&](const Certificate& cert, double lambda,
                              std::vector<double>& dir) {
    if (order_one) {
      for (std::size_t w = 0; w < lc.n; ++w)
        dir[w] = cert.divergences[w] + sign * lambda * cons.costs[w];
      return;
    }
    double log_scale = -kInf;
    for (std::size_t w = 0; w < lc.n; ++w) {
      // log t_w; infinite divergences land on the right side automatically
      dir[w] = (a - 1.0) * (cert.divergences[w] - cert.log_mean_norm);
      log_scale = std::max(log_scale, std::min(dir[w], 700.0));
    }
    double grad_sign = a > 1.0 ? 1.0 : -1.0;
    // |g_w| relative to the largest gradient entry, and the multiplier
    // expressed in the same frame
    double denom = std::abs(a - 1.0) * std::exp(cert.log_mean_norm);
    double lambda_scaled = lambda * denom * std::exp(-log_scale);
    for (std::size_t w = 0; w < lc.n; ++w) {
      double u = std::exp(std::min(dir[w], 700.0) - log_scale);
      dir[w] = grad_sign * u + sign * lambda_scaled * cons.costs[w];
    }
  };

  std::size_t total_iters = 0;
  // The normalized gradient frame compresses differences by |alpha-1|, so
  // the admissible step grows by the same factor near order one.
  const double step_cap =
      order_one ? 4.0 : std::min(4.0 / std::min(1.0, std::abs(a - 1.0)), 4096.0);
  auto inner = [&](std::vector<double>& logp, double lambda, std::size_t budget) {
    double step = 1.0;
    int stalls = 0;
    Certificate cert = evaluate(lc, logp, alpha);
    auto raw_info = [&](const Certificate& c) {
      return order_one ? c.lower : a / (a - 1.0) * c.log_mean_norm;
    };
    double value = raw_info(cert) + sign * lambda * prior_cost(logp);
    std::vector<double> dir(lc.n);
    for (std::size_t it = 0; it < budget; ++it) {
      ++total_iters;
      ascent_direction(cert, lambda, dir);
      double scale = 0.0;
      for (double d : dir) scale = std::max(scale, std::abs(d));
      if (scale == 0.0) break;
      std::vector<double> trial;
      Certificate trial_cert;
      double trial_value = -kInf;
      for (int halvings = 0;; ++halvings) {
        trial = logp;
        for (std::size_t w = 0; w < lc.n; ++w) trial[w] += step / scale * dir[w];
        log_normalize(trial);
        trial_cert = evaluate(lc, trial, alpha);
        trial_value = raw_info(trial_cert) + sign * lambda * prior_cost(trial);
        if (trial_value >= value - 1e-13 || halvings >= 60) break;
        step *= 0.5;
      }
      double gain = trial_value - value;
      logp = std::move(trial);
      cert = std::move(trial_cert);
      value = trial_value;
      step = std::min(step_cap, step * 1.25);
      stalls = gain < 1e-14 ? stalls + 1 : 0;
      if (stalls >= 25) break;
    }
    return cert;
  };

  // Certificate at an exact-feasible tilt of the candidate prior.
  CapacitySolution best{alpha, 0.0, -1.0, kInf, kInf, Pmf::validated({1.0}),
                        Prior::uniform(1), 0, false};
  auto consider = [&](std::vector<double> logp) {
    project_cost(logp, cons.costs, cons.budget, cons.direction);
    Certificate cert = evaluate(lc, logp, alpha);
    cert.upper = std::max(constrained_upper(lc, cert.log_center, alpha, cons), cert.lower);
    if (cert.upper - cert.lower < best.gap) best = make_solution(alpha, cert, logp, 0, opt.tol);
    return best.gap <= opt.tol;
  };

  // When the unconstrained optimum is feasible the constraint is slack and
  // the plain solver settles the problem.
  const std::size_t inner_budget = std::max<std::size_t>(opt.max_iter / 128, 200);
  {
    CapacitySolution unconstrained = solve_capacity(ch, alpha, opt);
    std::vector<double> logp_u(lc.n);
    for (std::size_t w = 0; w < lc.n; ++w) logp_u[w] = safe_log(unconstrained.prior[w]);
    log_normalize(logp_u);
    double cost_u = prior_cost(logp_u);
    if (consider(logp_u) || feasible(cost_u)) {
      best.iterations = total_iters + unconstrained.iterations;
      return best;
    }
  }
  std::vector<double> logp(lc.n, -std::log(static_cast<double>(lc.n)));
  inner(logp, 0.0, inner_budget);

  // Find a multiplier making the constraint hold, then bisect on it.
  double hi = 1.0;
  std::vector<double> logp_hi = logp;
  for (int i = 0; i < 60; ++i) {
    inner(logp_hi, hi, inner_budget);
    if (consider(logp_hi)) {
      best.iterations = total_iters;
      return best;
    }
    if (feasible(prior_cost(logp_hi))) break;
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int i = 0; i < 64 && best.gap > opt.tol && total_iters < opt.max_iter * 2; ++i) {
    if (hi - lo <= 1e-12 * (1.0 + hi)) break;
    double mid = 0.5 * (lo + hi);
    std::vector<double> logp_mid = logp;  // warm start from the infeasible side
    inner(logp_mid, mid, inner_budget);
    if (consider(logp_mid)) break;
    if (feasible(prior_cost(logp_mid))) {
      hi = mid;
      logp_hi = std::move(logp_mid);
    } else {
      lo = mid;
      logp = std::move(logp_mid);
    }
  }

  // The Lagrangian can be flat along a cost-varying segment at the critical
  // multiplier (the bisection then sees a cost jump), so the remaining error
  // lives on the boundary slice. Ascend the information directly on the
  // cost-equality slice, starting from the cost-matching mixture of the two
  // bracket endpoints, with the near-critical tilt keeping the raw step
  // almost parallel to the slice.
  if (best.gap > opt.tol) {
    const double lambda_star = hi;
    std::vector<double> slice(lc.n);
    double c_lo = prior_cost(logp), c_hi = prior_cost(logp_hi);
    if ((c_lo - cons.budget) * (c_hi - cons.budget) < 0.0) {
      double theta = (cons.budget - c_hi) / (c_lo - c_hi);
      for (std::size_t w = 0; w < lc.n; ++w) {
        double p = theta * std::exp(logp[w]) + (1.0 - theta) * std::exp(logp_hi[w]);
        slice[w] = safe_log(p);
      }
      log_normalize(slice);
    } else {
      slice = logp_hi;
    }
    project_cost_equality(slice, cons.costs, cons.budget);

    double step = 1.0;
    int stalls = 0;
    Certificate cert = evaluate(lc, slice, alpha);
    auto raw_info = [&](const Certificate& c) {
      return order_one ? c.lower : a / (a - 1.0) * c.log_mean_norm;
    };
    double value = raw_info(cert);
    std::vector<double> dir(lc.n);
    const std::size_t slice_budget = inner_budget * 16;
    for (std::size_t it = 0;
         it < slice_budget && best.gap > opt.tol && total_iters < opt.max_iter * 4; ++it) {
      ++total_iters;
      ascent_direction(cert, lambda_star, dir);
      double scale = 0.0;
      for (double d : dir) scale = std::max(scale, std::abs(d));
      if (scale == 0.0) break;
      std::vector<double> trial;
      Certificate trial_cert;
      double trial_value = -kInf;
      for (int halvings = 0;; ++halvings) {
        trial = slice;
        for (std::size_t w = 0; w < lc.n; ++w) trial[w] += step / scale * dir[w];
        log_normalize(trial);
        project_cost_equality(trial, cons.costs, cons.budget);
        trial_cert = evaluate(lc, trial, alpha);
        trial_value = raw_info(trial_cert);
        if (trial_value >= value - 1e-13 || halvings >= 60) break;
        step *= 0.5;
      }
      double gain = trial_value - value;
      slice = std::move(trial);
      cert = std::move(trial_cert);
      value = trial_value;
      step = std::min(step_cap, step * 1.25);
      stalls = gain < 1e-15 ? stalls + 1 : 0;
      if ((it & 63) == 63 || stalls >= 40) {
        if (consider(slice) || stalls >= 40) break;
      }
    }
    consider(slice);
  }
  best.iterations = total_iters;
  return best;
}

}  // namespace

CapacitySolution solve_constrained_capacity(const FiniteChannel& ch, Order alpha,
                                            const ConstraintSet& constraint, double tol,
                                            std::size_t max_iter) {
  if (!alpha.is_finite_positive())
    throw OrderOutOfRange("constrained capacity needs a finite positive order");
  constraint.check_feasible(ch);
  SolverOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;

  switch (constraint.kind) {
    case ConstraintSet::Kind::Unconstrained:
      return solve_capacity(ch, alpha, opt);
    case ConstraintSet::Kind::SupportRestriction: {
      std::vector<Pmf> rows;
      for (std::size_t w : constraint.support) rows.push_back(ch.row(w));
      FiniteChannel sub(std::move(rows));
      CapacitySolution inner = solve_capacity(sub, alpha, opt);
      std::vector<double> lifted(ch.input_size(), 0.0);
      for (std::size_t i = 0; i < constraint.support.size(); ++i)
        lifted[constraint.support[i]] = inner.prior[i];
      double total = 0.0;
      for (double v : lifted) total += v;
      for (auto& v : lifted) v /= total;
      inner.prior = Prior::validated(std::move(lifted));
      return inner;
    }
    case ConstraintSet::Kind::LinearCost:
      return solve_cost_constrained(ch, alpha, constraint, opt);
  }
  throw DomainError("unreachable constraint kind");
}

double constrained_joint_sup(const FiniteChannel& ch, Order alpha,
                             const ConstraintSet& constraint, const FiniteMeasure& q) {
  if (!alpha.is_finite_positive())
    throw OrderOutOfRange("constrained joint supremum needs a finite positive order");
  constraint.check_feasible(ch);
  if (q.size() != ch.output_size())
    throw AlphabetMismatch("reference measure must live on the output alphabet");
  LogChannel lc(ch);
  std::vector<double> logq(q.size());
  for (std::size_t y = 0; y < q.size(); ++y) logq[y] = safe_log(q[y]);

  if (constraint.kind != ConstraintSet::Kind::LinearCost) {
    double worst = 0.0;
    if (constraint.kind == ConstraintSet::Kind::Unconstrained) {
      for (std::size_t w = 0; w < lc.n; ++w)
        worst = std::max(worst, renyi_divergence_log(lc.log_rows[w], logq, alpha));
    } else {
      for (std::size_t w : constraint.support)
        worst = std::max(worst, renyi_divergence_log(lc.log_rows[w], logq, alpha));
    }
    return worst;
  }
  return constrained_upper(lc, logq, alpha, constraint);
}

double ehb_gap(const FiniteChannel& ch, const Pmf& q, Order alpha,
               const CapacitySolution& solution) {
  double radius = relative_radius(ch, q.measure(), alpha);
  if (radius == kInf) return kInf;
  double shift = renyi_divergence(solution.center, q, alpha);
  return radius - solution.capacity - shift;
}

FiniteChannel product_channel(const FiniteChannel& a, const FiniteChannel& b) {
  std::vector<Pmf> rows;
  rows.reserve(a.input_size() * b.input_size());
  std::vector<std::string> labels;
  const bool labelled = !a.labels.empty() && !b.labels.empty();
  for (std::size_t i = 0; i < a.input_size(); ++i) {
    for (std::size_t j = 0; j < b.input_size(); ++j) {
      std::vector<double> row;
      row.reserve(a.output_size() * b.output_size());
      double total = 0.0;
      for (std::size_t y = 0; y < a.output_size(); ++y)
        for (std::size_t z = 0; z < b.output_size(); ++z) {
          row.push_back(a.row(i)[y] * b.row(j)[z]);
          total += row.back();
        }
      for (auto& v : row) v /= total;
      rows.push_back(Pmf::validated(std::move(row)));
      if (labelled) labels.push_back(a.labels[i] + "*" + b.labels[j]);
    }
  }
  return FiniteChannel(std::move(rows), std::move(labels));
}

FiniteChannel union_channel(const FiniteChannel& a, const FiniteChannel& b) {
  if (a.output_size() != b.output_size())
    throw AlphabetMismatch("union needs a common output alphabet");
  std::vector<Pmf> rows = a.rows;
  auto duplicate = [&](const Pmf& candidate) {
    for (const auto& row : rows) {
      if (row.weights() == candidate.weights()) return true;
    }
    return false;
  };
  for (const auto& row : b.rows) {
    if (!duplicate(row)) rows.push_back(row);
  }
  return FiniteChannel(std::move(rows));
}

FiniteChannel epsilon_core(const FiniteChannel& ch, Order alpha, double eps,
                           const CapacitySolution& solution) {
  if (eps < 0.0) throw DomainError("core threshold must be non-negative");
  std::vector<Pmf> rows;
  std::vector<std::string> labels;
  for (std::size_t w = 0; w < ch.input_size(); ++w) {
    double d = renyi_divergence(ch.row(w), solution.center, alpha);
    if (d >= solution.capacity - eps) {
      rows.push_back(ch.row(w));
      if (!ch.labels.empty()) labels.push_back(ch.labels[w]);
    }
  }
  if (rows.empty())
    throw EmptyCore("no row reaches capacity - eps; eps is below the certificate resolution");
  return FiniteChannel(std::move(rows), std::move(labels));
}

FiniteChannel convex_hull_augment(const FiniteChannel& ch, const std::vector<Prior>& priors) {
  std::vector<Pmf> rows = ch.rows;
  for (const auto& p : priors) {
    p.check_matches(ch);
    MeanMeasure mix = mean_measure(ch, p, Order::one());
    std::vector<double> row = mix.measure.weights;
    double total = mix.norm();
    for (auto& v : row) v /= total;
    rows.push_back(Pmf::validated(std::move(row)));
  }
  return FiniteChannel(std::move(rows));
}

CenterContinuityReport center_continuity_check(const FiniteChannel& ch, Order alpha,
                                               Order eta, const CapacitySolution& sol_alpha,
                                               const CapacitySolution& sol_eta,
                                               std::optional<double> slack) {
  (void)ch;
  double allowed = slack.value_or(10.0 * (sol_alpha.gap + sol_eta.gap) + 1e-12);
  CenterContinuityReport report{};
  report.capacity_increase = sol_eta.capacity - sol_alpha.capacity;
  report.center_divergence = renyi_divergence(sol_alpha.center, sol_eta.center, alpha);
  report.center_tv = total_variation(sol_alpha.center, sol_eta.center);
  double scale = eta.is_infinity() ? 1.0 : std::min(1.0, eta.value());
  report.tv_bound =
      std::sqrt(std::max(2.0 * report.capacity_increase, 0.0) / scale);
  report.divergence_bound_holds =
      report.capacity_increase >= report.center_divergence - allowed;
  report.tv_bound_holds = report.center_tv <= report.tv_bound + std::sqrt(allowed) + allowed;
  return report;
}

}  // namespace renyi
