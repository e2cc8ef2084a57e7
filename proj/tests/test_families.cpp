#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyi/capacity.hpp"
#include "renyi/families.hpp"
#include "renyi/numeric.hpp"
#include "renyi/quadrature.hpp"
#include "renyi/rng.hpp"

using namespace renyi;

namespace {

// printed closed form for the power density (1-beta) y^(-beta)
double power_density_capacity(double beta, double alpha) {
  if (alpha == 1.0) return beta / (1.0 - beta) + std::log(1.0 - beta);
  return (alpha * std::log(1.0 - beta) - std::log(1.0 - alpha * beta)) / (alpha - 1.0);
}

}  // namespace

TEST_CASE("plain adaptive quadrature") {
  auto sq = [](double x) { return x * x; };
  CHECK(integrate_adaptive(sq, 0.0, 1.0, 1e-12) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  auto osc = [](double x) { return std::sin(10.0 * x); };
  CHECK(integrate_adaptive(osc, 0.0, 1.0, 1e-11) ==
        doctest::Approx((1.0 - std::cos(10.0)) / 10.0).epsilon(1e-10));
}

TEST_CASE("quadrature with integrable endpoint singularities") {
  auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
  auto r = integrate_with_endpoint_singularities(inv_sqrt, 0.0, 1.0, {0.0}, 1e-10);
  CHECK_FALSE(r.diverged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

  // a singularity at 1 runs into the ulp(1) resolution limit; the certified
  // truncation keeps the result within ~1e-7
  auto both = [](double x) { return 1.0 / std::sqrt(x) + 1.0 / std::sqrt(1.0 - x); };
  auto r2 = integrate_with_endpoint_singularities(both, 0.0, 1.0, {0.0, 1.0}, 1e-9);
  CHECK_FALSE(r2.diverged);
  CHECK(r2.value == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("quadrature certifies divergent integrals") {
  auto inv = [](double x) { return 1.0 / x; };
  CHECK(integrate_with_endpoint_singularities(inv, 0.0, 1.0, {0.0}, 1e-9).diverged);
  auto inv15 = [](double x) { return std::pow(x, -1.5); };
  CHECK(integrate_with_endpoint_singularities(inv15, 0.0, 1.0, {0.0}, 1e-9).diverged);
}

TEST_CASE("circle densities validate their mass") {
  CHECK_NOTHROW(DensityOnCircle::power(0.5));
  CHECK_THROWS_AS(DensityOnCircle::power(1.2), DomainError);
  CHECK_THROWS_AS(DensityOnCircle::custom([](double) { return 2.0; }, {}, 2.0), DomainError);
  CHECK_NOTHROW(DensityOnCircle::custom([](double y) { return 2.0 * y; }, {}, 2.0));
  PiecewiseConstant bad{{0.5}, {1.0, 2.0}};
  CHECK_THROWS_AS(DensityOnCircle::piecewise(bad), DomainError);
}

TEST_CASE("flat density has zero shift capacity at every order") {
  DensityOnCircle flat = DensityOnCircle::uniform();
  for (Order a : {Order::make(0.4), Order::one(), Order::make(3.0), Order::infinity()}) {
    CHECK(shift_capacity(flat, a) == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("power density capacities and their divergence threshold") {
  for (double beta : {0.3, 0.5}) {
    DensityOnCircle f = DensityOnCircle::power(beta);
    CHECK(shift_capacity(f, Order::one()) ==
          doctest::Approx(power_density_capacity(beta, 1.0)).epsilon(1e-8));
    for (double av : {0.5, 2.5}) {
      if (av >= 1.0 / beta) {
        CHECK(shift_capacity(f, Order::make(av)) == kInf);
      } else {
        CHECK(shift_capacity(f, Order::make(av)) ==
              doctest::Approx(power_density_capacity(beta, av)).epsilon(1e-7));
      }
    }
    CHECK(shift_capacity(f, Order::infinity()) == kInf);
  }
  // the stated value at beta = 1/2, order one: 1 - log 2
  CHECK(shift_capacity(DensityOnCircle::power(0.5), Order::one()) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("linear density values") {
  DensityOnCircle f = DensityOnCircle::linear();
  // order one: int 2y log(2y) = log 2 - 1/2
  CHECK(shift_capacity(f, Order::one()) ==
        doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-9));
  // order two: log(int (2y)^2) = log(4/3)
  CHECK(shift_capacity(f, Order::make(2.0)) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-9));
  CHECK(shift_capacity(f, Order::infinity()) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("family capacity is the supremum over the members") {
  DensityOnCircle linear = DensityOnCircle::linear();
  DensityOnCircle power_half = DensityOnCircle::power(0.5);
  std::vector<DensityOnCircle> fam{linear, power_half};

  CHECK(shift_family_capacity({linear}, Order::make(2.0)) ==
        doctest::Approx(shift_capacity(linear, Order::make(2.0))));
  // at order 1/2 the two members tie; that is the kink of the family curve
  double a = shift_capacity(linear, Order::make(0.5));
  double b = shift_capacity(power_half, Order::make(0.5));
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  CHECK(shift_family_capacity(fam, Order::make(0.5)) ==
        doctest::Approx(std::max(a, b)).epsilon(1e-10));
  // slopes differ across the kink: compare one-sided increments
  double below = shift_family_capacity(fam, Order::make(0.4));
  double above = shift_family_capacity(fam, Order::make(0.6));
  double mid = shift_family_capacity(fam, Order::make(0.5));
  CHECK((mid - below) / 0.1 != doctest::Approx((above - mid) / 0.1).epsilon(0.05));

  std::vector<DensityOnCircle> with_flat{DensityOnCircle::uniform(), linear};
  for (double av : {0.3, 1.0, 2.0}) {
    CHECK(shift_family_capacity(with_flat, Order::make(av)) ==
          doctest::Approx(std::max(0.0, shift_capacity(linear, Order::make(av))))
              .epsilon(1e-9));
  }
}

TEST_CASE("constant-intensity divergence closed form") {
  CHECK(poisson_divergence_const(2.0, 2.0, 1.7, Order::make(0.7)) == doctest::Approx(0.0));
  CHECK(poisson_divergence_const(2.0, 1.0, 1.0, Order::one()) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  // generic building block ((b^a x^(1-a) - b)/(a-1) - b + x) T
  double b = 1.7, x = 0.6, T = 2.0, a = 2.5;
  double expected = ((std::pow(b, a) * std::pow(x, 1.0 - a) - b) / (a - 1.0) - b + x) * T;
  CHECK(poisson_divergence_const(b, x, T, Order::make(a)) ==
        doctest::Approx(expected).epsilon(1e-13));
  // absolute-continuity failures at order >= 1
  CHECK(poisson_divergence_const(1.0, 0.0, 1.0, Order::make(2.0)) == kInf);
  CHECK(std::isfinite(poisson_divergence_const(1.0, 0.0, 1.0, Order::make(0.5))));
}

TEST_CASE("quadrature route matches the constant closed form") {
  rng::Engine eng(163);
  for (int i = 0; i < 20; ++i) {
    double f = eng.uniform(0.1, 3.0), g = eng.uniform(0.1, 3.0), T = eng.uniform(0.5, 2.0);
    Order a = Order::make(eng.uniform() < 0.2 ? 1.0 : eng.uniform(0.2, 3.0));
    double exact = poisson_divergence_const(f, g, T, a);
    double quad = poisson_divergence([f](double) { return f; }, [g](double) { return g; },
                                     T, a, 1e-10);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-9));
  }
  // additivity over disjoint time intervals: a two-level profile against a
  // constant equals the sum of the segment divergences
  PiecewiseConstant two{{0.5}, {2.0, 0.5}};
  double d = poisson_divergence([&two](double t) { return two(t); },
                                [](double) { return 1.0; }, 1.0, Order::make(2.0), 1e-10);
  double parts = poisson_divergence_const(2.0, 1.0, 0.5, Order::make(2.0)) +
                 poisson_divergence_const(0.5, 1.0, 0.5, Order::make(2.0));
  CHECK(d == doctest::Approx(parts).epsilon(1e-9));
}

TEST_CASE("mean-pinned family capacity") {
  // degenerate pins
  CHECK(poisson_mean_capacity(1.0, 0.2, 1.0, 0.2, Order::make(2.0)).capacity ==
        doctest::Approx(0.0));
  CHECK(poisson_mean_capacity(1.0, 0.2, 1.0, 1.0, Order::make(2.0)).capacity ==
        doctest::Approx(0.0));

  auto r = poisson_mean_capacity(1.0, 0.0, 1.0, 0.5, Order::make(2.0));
  CHECK(r.center_intensity == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(r.capacity == doctest::Approx(2.0 * (std::sqrt(0.5) - 0.5)).epsilon(1e-14));

  // continuity across order one
  auto at_one = poisson_mean_capacity(1.0, 0.1, 2.0, 0.7, Order::one());
  for (double eps : {1e-6, -1e-6}) {
    auto nearby = poisson_mean_capacity(1.0, 0.1, 2.0, 0.7, Order::make(1.0 + eps));
    CHECK(std::abs(nearby.capacity - at_one.capacity) <= 1e-4);
  }

  // mixture form agrees
  rng::Engine eng(167);
  for (int i = 0; i < 30; ++i) {
    double a0 = eng.uniform() < 0.5 ? 0.0 : eng.uniform(0.0, 1.0);
    double b = a0 + eng.uniform(0.05, 2.0);
    double c = eng.uniform(a0, b);
    double T = eng.uniform(0.5, 2.0);
    Order alpha = Order::make(eng.uniform() < 0.2 ? 1.0 : eng.uniform(0.1, 4.0));
    auto res = poisson_mean_capacity(T, a0, b, c, alpha);
    double alt = poisson_mean_capacity_mixture_form(T, a0, b, c, alpha);
    CHECK(std::abs(res.capacity - alt) <= 1e-10 * std::max(1.0, res.capacity));
  }

  CHECK_THROWS_AS(poisson_mean_capacity(1.0, 0.0, 1.0, 1.5, Order::one()), DomainError);
  CHECK_THROWS_AS(poisson_mean_capacity(1.0, 0.0, 1.0, 0.5, Order::infinity()),
                  OrderOutOfRange);
}

TEST_CASE("one-sided mean constraints clamp at the critical mean") {
  // slack constraints reproduce the bounded family
  auto bounded = poisson_bounded_capacity(1.0, 0.0, 1.0, Order::make(2.0));
  auto le_at_top = poisson_constrained_capacity(1.0, 0.0, 1.0, 1.0,
                                                PoissonConstraintKind::MeanLe,
                                                Order::make(2.0));
  CHECK(le_at_top.capacity == doctest::Approx(bounded.capacity).epsilon(1e-12));
  auto ge_at_bottom = poisson_constrained_capacity(1.0, 0.0, 1.0, 0.0,
                                                   PoissonConstraintKind::MeanGe,
                                                   Order::make(2.0));
  CHECK(ge_at_bottom.capacity == doctest::Approx(bounded.capacity).epsilon(1e-12));

  // binding cap below the critical mean 1/e at order one
  auto le = poisson_constrained_capacity(1.0, 0.0, 1.0, 0.2, PoissonConstraintKind::MeanLe,
                                         Order::one());
  auto pinned = poisson_mean_capacity(1.0, 0.0, 1.0, 0.2, Order::one());
  CHECK(le.capacity == doctest::Approx(pinned.capacity).epsilon(1e-13));
  CHECK(poisson_optimal_mean(0.0, 1.0, Order::one()) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("bounded-family closed form") {
  for (double av : {0.5, 2.0, 4.0}) {
    auto r = poisson_bounded_capacity(1.0, 0.0, 1.0, Order::make(av));
    double expected = std::pow(av, 1.0 / (1.0 - av));
    CHECK(r.capacity == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.center_intensity == doctest::Approx(expected).epsilon(1e-12));
  }
  auto one = poisson_bounded_capacity(1.0, 0.0, 1.0, Order::one());
  CHECK(one.capacity == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(one.center_intensity == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(poisson_bounded_capacity(2.0, 0.7, 0.7, Order::make(3.0)).capacity ==
        doctest::Approx(0.0));

  // consistency with the clamped constrained route
  rng::Engine eng(173);
  for (int i = 0; i < 20; ++i) {
    double a0 = eng.uniform() < 0.5 ? 0.0 : eng.uniform(0.0, 1.0);
    double b = a0 + eng.uniform(0.05, 2.0);
    double T = eng.uniform(0.5, 2.0);
    Order alpha = Order::make(eng.uniform() < 0.2 ? 1.0 : eng.uniform(0.1, 4.0));
    auto direct = poisson_bounded_capacity(T, a0, b, alpha);
    auto via_le = poisson_constrained_capacity(T, a0, b, b, PoissonConstraintKind::MeanLe,
                                               alpha);
    CHECK(std::abs(direct.capacity - via_le.capacity) <= 1e-12 * std::max(1.0, direct.capacity));
    CHECK(direct.center_intensity ==
          doctest::Approx(via_le.center_intensity).epsilon(1e-10));
  }
}

TEST_CASE("envelope-bounded family reduces to segment sums") {
  Order a = Order::make(2.0);
  PiecewiseConstant constant{{}, {1.0}};
  auto seg = poisson_product_capacity(1.0, 0.0, constant, a);
  CHECK(seg.capacity == doctest::Approx(0.5).epsilon(1e-12));

  PiecewiseConstant two{{0.5}, {1.0, 2.0}};
  auto split = poisson_product_capacity(1.0, 0.0, two, a);
  double expected = poisson_bounded_capacity(0.5, 0.0, 1.0, a).capacity +
                    poisson_bounded_capacity(0.5, 0.0, 2.0, a).capacity;
  CHECK(split.capacity == doctest::Approx(expected).epsilon(1e-12));
  CHECK(split.center_intensity.values.size() == 2);

  PiecewiseConstant floor_only{{}, {0.4}};
  CHECK(poisson_product_capacity(1.0, 0.4, floor_only, a).capacity ==
        doctest::Approx(0.0));

  // quadrature route agrees on a smooth envelope
  auto env = [](double t) { return 0.5 + t; };
  double quad = poisson_product_capacity_quad(1.0, 0.0, env, a, 1e-10);
  double riemann = 0.0;
  const int K = 2000;
  for (int k = 0; k < K; ++k) {
    double t = (k + 0.5) / K;
    riemann += poisson_bounded_capacity(1.0 / K, 0.0, env(t), a).capacity;
  }
  CHECK(quad == doctest::Approx(riemann).epsilon(1e-6));
}

TEST_CASE("path sampling and likelihood ratios") {
  // unit-rate process: the ratio is identically one
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SamplePath path = poisson_sample([](double) { return 1.0; }, 1.0, 1.0, seed);
    CHECK(poisson_rnd(path, [](double) { return 1.0; }, 1.0) == doctest::Approx(1.0));
    for (std::size_t j = 1; j < path.arrivals.size(); ++j)
      CHECK(path.arrivals[j] > path.arrivals[j - 1]);
  }
  // empty path against a constant-2 intensity
  SamplePath empty;
  CHECK(poisson_rnd(empty, [](double) { return 2.0; }, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(poisson_sample([](double) { return 2.0; }, 1.0, 1.0, 7),
                  UnboundedIntensity);

  // sampler mean arrival count matches the intensity mass
  double total = 0.0;
  const int paths = 20000;
  for (int i = 0; i < paths; ++i) {
    total += static_cast<double>(
        poisson_sample([](double) { return 1.5; }, 1.5, 2.0, rng::hash_combine(99, i))
            .arrivals.size());
  }
  CHECK(total / paths == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("product-weight expectation identity") {
  // E[prod g(tau)] under intensity f equals exp(int (g-1) f); g=1.5, f=1
  const int n = 20000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    SamplePath path = poisson_sample([](double) { return 1.0; }, 1.0, 1.0,
                                     rng::hash_combine(7, i));
    double z = std::pow(1.5, static_cast<double>(path.arrivals.size()));
    double delta = z - mean;
    mean += delta / (i + 1);
    m2 += delta * (z - mean);
  }
  double se = std::sqrt(m2 / (n - 1) / n);
  CHECK(std::abs(mean - std::exp(0.5)) <= 3.0 * se);
}

TEST_CASE("Monte-Carlo divergence against the closed form") {
  Order half = Order::make(0.5);
  auto same = poisson_mc_divergence_const(1.3, 1.3, 1.0, half, 5000, 11);
  CHECK(std::abs(same.estimate) <= 3.0 * same.stderr_ + 1e-12);

  auto est = poisson_mc_divergence_const(2.0, 1.0, 1.0, half, 100000, 12);
  double exact = poisson_divergence_const(2.0, 1.0, 1.0, half);
  CHECK(std::abs(est.estimate - exact) <= 3.0 * est.stderr_);

  CHECK_THROWS_AS(poisson_mc_divergence_const(2.0, 1.0, 1.0, Order::make(3.5), 100, 1),
                  OrderOutOfRange);
  CHECK_THROWS_AS(poisson_mc_divergence_const(2.0, 1.0, 1.0, Order::one(), 100, 1),
                  OrderOutOfRange);
  CHECK_THROWS_AS(poisson_mc_divergence_const(3.0, 0.2, 1.5, Order::make(2.5), 1000, 1),
                  VarianceBlowup);
}

TEST_CASE("bin-count discretization") {
  PoissonFamilySpec spec;
  spec.horizon = 1.0;
  spec.floor = 0.0;
  spec.ceiling = 1.0;

  FiniteChannel one_bin = poisson_discretize(spec, 1, 2);
  CHECK(one_bin.input_size() == 2);
  CHECK(one_bin.output_size() == 6);  // counts 0..4 plus overflow
  // the zero-intensity row is a point mass on the zero count
  CHECK(one_bin.row(0)[0] == doctest::Approx(1.0));

  // constraint filtering: pinning the mean to zero keeps one profile
  PoissonFamilySpec pinned = spec;
  pinned.constraint = PoissonConstraintKind::MeanEq;
  pinned.mean_value = 0.0;
  CHECK(poisson_discretize(pinned, 2, 2).input_size() == 1);
  pinned.mean_value = 0.5;
  CHECK(poisson_discretize(pinned, 2, 2).input_size() == 2);  // (0,1) and (1,0)

  PoissonFamilySpec infeasible = spec;
  infeasible.constraint = PoissonConstraintKind::MeanEq;
  infeasible.mean_value = 0.123;
  CHECK_THROWS_AS(poisson_discretize(infeasible, 1, 2), InfeasibleConstraint);

  CHECK_THROWS_AS(poisson_discretize(spec, 12, 6), BudgetExceeded);

  // capacities increase with refinement and approach the closed form 1/2
  Order a = Order::make(2.0);
  double closed = poisson_bounded_capacity(1.0, 0.0, 1.0, a).capacity;
  double prev = 0.0;
  for (std::size_t bins : {1u, 2u, 4u}) {
    auto sol = solve_capacity(poisson_discretize(spec, bins, 2), a, 1e-7, 30000);
    CHECK(sol.capacity >= prev - 1e-7);
    CHECK(sol.capacity <= closed + 1e-7);
    prev = sol.capacity;
  }
  CHECK(prev >= 0.40);
}

TEST_CASE("family spec validation") {
  PoissonFamilySpec spec;
  spec.horizon = -1.0;
  CHECK_THROWS_AS(spec.check(), DomainError);
  spec.horizon = 1.0;
  spec.floor = 0.5;
  spec.ceiling = 0.2;
  CHECK_THROWS_AS(spec.check(), DomainError);
  spec.ceiling = 1.0;
  spec.constraint = PoissonConstraintKind::MeanEq;
  spec.mean_value = 2.0;
  CHECK_THROWS_AS(spec.check(), DomainError);
  spec.mean_value = 0.7;
  CHECK_NOTHROW(spec.check());
}
