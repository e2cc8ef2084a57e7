#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyi/divergence.hpp"
#include "renyi/mean.hpp"
#include "renyi/measure.hpp"
#include "renyi/numeric.hpp"
#include "renyi/rng.hpp"

using namespace renyi;

namespace {

FiniteChannel bsc(double delta) {
  return FiniteChannel({Pmf::validated({1.0 - delta, delta}),
                        Pmf::validated({delta, 1.0 - delta})});
}

FiniteChannel identity_channel(std::size_t k) {
  std::vector<Pmf> rows;
  for (std::size_t w = 0; w < k; ++w) {
    std::vector<double> row(k, 0.0);
    row[w] = 1.0;
    rows.push_back(Pmf::validated(std::move(row)));
  }
  return FiniteChannel(std::move(rows));
}

// Four symmetric rows built from delta and 1/2-delta; every prior in the
// beta family achieves the same information ln 2 - h_alpha(2 delta).
FiniteChannel symmetric_quaternary(double delta) {
  double e = 0.5 - delta;
  return FiniteChannel({Pmf::validated({delta, delta, e, e}),
                        Pmf::validated({e, e, delta, delta}),
                        Pmf::validated({delta, e, e, delta}),
                        Pmf::validated({e, delta, delta, e})});
}

FiniteChannel random_channel(rng::Engine& eng, std::size_t n, std::size_t m) {
  std::vector<Pmf> rows;
  for (std::size_t w = 0; w < n; ++w) rows.push_back(Pmf::validated(eng.dirichlet(m)));
  return FiniteChannel(std::move(rows));
}

Prior random_prior(rng::Engine& eng, std::size_t n) {
  return Prior::validated(eng.dirichlet(n));
}

}  // namespace

TEST_CASE("order tags and snapping") {
  CHECK(Order::make(0.0).is_zero());
  CHECK(Order::make(1.0).is_one());
  CHECK(Order::make(1.0 + 5e-10).is_one());  // routed through the order-one branch
  CHECK(Order::make(1.0 + 5e-9).tag() == Order::Tag::FiniteGeneral);
  CHECK(Order::make(kInf).is_infinity());
  CHECK(Order::parse("inf").is_infinity());
  CHECK(Order::parse("2.5").value() == doctest::Approx(2.5));
  CHECK_THROWS_AS(Order::make(-1.0), OrderOutOfRange);
  CHECK_THROWS_AS(Order::parse("abc"), ParseError);
}

TEST_CASE("pmf validation refuses to renormalize") {
  CHECK_NOTHROW(Pmf::validated({0.5, 0.5 + 5e-13}));
  CHECK_THROWS_AS(Pmf::validated({0.5, 0.5 + 1e-9}), DomainError);
  CHECK_THROWS_AS(Pmf::validated({-0.1, 1.1}), DomainError);
  CHECK_THROWS_AS(FiniteMeasure({-1.0, 2.0}), DomainError);
}

TEST_CASE("divergence of a measure from itself vanishes") {
  Pmf w = Pmf::validated({0.3, 0.2, 0.5});
  for (Order a : {Order::make(0.4), Order::one(), Order::make(3.0), Order::infinity()}) {
    CHECK(renyi_divergence(w, w, a) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("point mass against uniform gives log 2 at every positive order") {
  Pmf w = Pmf::validated({1.0, 0.0});
  Pmf u = Pmf::validated({0.5, 0.5});
  for (Order a : {Order::make(0.5), Order::one(), Order::make(2.0), Order::infinity()}) {
    CHECK(renyi_divergence(w, u, a) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("order-one branch matches the hand value and the order limit") {
  Pmf w = Pmf::validated({0.9, 0.1});
  Pmf q = Pmf::validated({0.5, 0.5});
  const double expected = 0.9 * std::log(1.8) + 0.1 * std::log(0.2);
  CHECK(renyi_divergence(w, q, Order::one()) == doctest::Approx(expected).epsilon(1e-15));
  // cross-check through the finite-order branch on both sides of one
  CHECK(renyi_divergence(w, q, Order::make(1.0 + 1e-6)) ==
        doctest::Approx(expected).epsilon(1e-5));
  CHECK(renyi_divergence(w, q, Order::make(1.0 - 1e-6)) ==
        doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("infinite divergence is a value, not an error") {
  Pmf w = Pmf::validated({0.5, 0.5, 0.0});
  Pmf q = Pmf::validated({1.0, 0.0, 0.0});
  CHECK(renyi_divergence(w, q, Order::make(2.0)) == kInf);
  CHECK(renyi_divergence(w, q, Order::one()) == kInf);
  CHECK(renyi_divergence(w, q, Order::infinity()) == kInf);
  CHECK(std::isfinite(renyi_divergence(w, q, Order::make(0.5))));

  Pmf a = Pmf::validated({1.0, 0.0});
  Pmf b = Pmf::validated({0.0, 1.0});
  CHECK(renyi_divergence(a, b, Order::make(0.5)) == kInf);  // mutually singular
}

TEST_CASE("divergence input checking") {
  Pmf w = Pmf::validated({1.0, 0.0});
  CHECK_THROWS_AS(renyi_divergence(w.measure(), FiniteMeasure({0.5, 0.25, 0.25}),
                                   Order::one()),
                  AlphabetMismatch);
  CHECK_THROWS_AS(renyi_divergence(w.measure(), FiniteMeasure({0.0, 0.0}), Order::one()),
                  ZeroMeasure);
}

TEST_CASE("scaling the reference shifts the divergence by -log gamma") {
  rng::Engine eng(11);
  for (int i = 0; i < 50; ++i) {
    Pmf w = Pmf::validated(eng.dirichlet(4));
    auto v = eng.dirichlet(4);
    double gamma = std::exp(eng.uniform(-2.0, 2.0));
    std::vector<double> vg(4);
    for (int y = 0; y < 4; ++y) vg[y] = v[y] * gamma;
    Order a = Order::make(eng.uniform(0.1, 5.0));
    double d = renyi_divergence(w.measure(), FiniteMeasure(v), a);
    double dg = renyi_divergence(w.measure(), FiniteMeasure(vg), a);
    CHECK(dg == doctest::Approx(d - std::log(gamma)).epsilon(1e-12));
  }
}

TEST_CASE("binary entropy branches") {
  for (Order a : {Order::make(0.3), Order::one(), Order::make(4.0), Order::infinity()}) {
    CHECK(binary_renyi_entropy(0.5, a) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(binary_renyi_entropy(0.0, a) == doctest::Approx(0.0));
    CHECK(binary_renyi_entropy(1.0, a) == doctest::Approx(0.0));
  }
  CHECK(binary_renyi_entropy(0.2, Order::one()) ==
        doctest::Approx(-0.2 * std::log(0.2) - 0.8 * std::log(0.8)).epsilon(1e-15));
  CHECK_THROWS_AS(binary_renyi_entropy(1.2, Order::one()), DomainError);
}

TEST_CASE("coarsening basics and data processing") {
  FiniteChannel ch = bsc(0.1);
  OutputPartition singleton{{0}, {1}};
  FiniteChannel same = coarsen_channel(ch, singleton);
  CHECK(same.row(0)[0] == ch.row(0)[0]);

  OutputPartition merge{{0, 1}};
  FiniteChannel one_col = coarsen_channel(ch, merge);
  CHECK(one_col.output_size() == 1);
  CHECK(renyi_divergence(one_col.row(0), one_col.row(1), Order::make(2.0)) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(coarsen_channel(ch, OutputPartition{{0}}), InvalidPartition);
  CHECK_THROWS_AS(coarsen_channel(ch, OutputPartition{{0, 0}, {1}}), InvalidPartition);
  CHECK_THROWS_AS(coarsen_channel(ch, OutputPartition{{0}, {}, {1}}), InvalidPartition);

  rng::Engine eng(5);
  for (int i = 0; i < 200; ++i) {
    std::size_t m = 3 + eng.below(3);
    Pmf w = Pmf::validated(eng.dirichlet(m));
    Pmf q = Pmf::validated(eng.dirichlet(m));
    std::size_t cells = 1 + eng.below(m - 1);
    OutputPartition part(cells);
    for (std::size_t y = 0; y < m; ++y) part[y < cells ? y : eng.below(cells)].push_back(y);
    Order a = Order::make(eng.uniform(0.05, 6.0));
    double full = renyi_divergence(w, q, a);
    double coarse = renyi_divergence(coarsen_measure(w.measure(), part),
                                     coarsen_measure(q.measure(), part), a);
    CHECK(full >= coarse - 1e-12);
  }
}

TEST_CASE("mean measure of a symmetric binary channel has the closed form") {
  const double delta = 0.15;
  FiniteChannel ch = bsc(delta);
  Prior p = Prior::uniform(2);
  for (double av : {0.4, 1.0, 2.0, 7.5}) {
    Order a = Order::make(av);
    auto mm = mean_measure(ch, p, a);
    double per_output =
        std::pow(0.5 * (std::pow(1.0 - delta, av) + std::pow(delta, av)), 1.0 / av);
    CHECK(mm.measure[0] == doctest::Approx(per_output).epsilon(1e-13));
    CHECK(mm.measure[1] == doctest::Approx(per_output).epsilon(1e-13));
    double norm = std::pow(2.0, (av - 1.0) / av) *
                  std::pow(std::pow(1.0 - delta, av) + std::pow(delta, av), 1.0 / av);
    CHECK(mm.norm() == doctest::Approx(norm).epsilon(1e-13));
  }
}

TEST_CASE("mean measure degenerate priors") {
  FiniteChannel ch = bsc(0.2);
  auto mm = mean_measure(ch, Prior::point_mass(2, 0), Order::make(3.0));
  CHECK(mm.measure[0] == doctest::Approx(0.8));
  CHECK(mm.norm() == doctest::Approx(1.0));

  FiniteChannel twins({Pmf::validated({0.7, 0.3}), Pmf::validated({0.7, 0.3})});
  for (Order a : {Order::zero(), Order::make(0.5), Order::one(), Order::infinity()}) {
    auto m2 = mean_measure(twins, Prior::uniform(2), a);
    CHECK(m2.measure[0] == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(m2.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("mean measure invariants over random instances") {
  rng::Engine eng(29);
  for (int i = 0; i < 100; ++i) {
    FiniteChannel ch = random_channel(eng, 2 + eng.below(4), 2 + eng.below(4));
    Prior p = random_prior(eng, ch.input_size());
    Order a = Order::make(std::exp(eng.uniform(std::log(0.02), std::log(50.0))));
    auto ma = mean_measure(ch, p, a);
    auto m1 = mean_measure(ch, p, Order::one());
    double supp = static_cast<double>(p.support().size());
    double lo = a.is_infinity() ? 1.0 : std::pow(supp, -1.0 / a.value());
    CHECK(ma.norm() >= lo - 1e-12);
    CHECK(ma.norm() <= supp + 1e-12);
    CHECK(m1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      CHECK((ma.measure[y] > 0.0) == (m1.measure[y] > 0.0));
    }
  }
}

TEST_CASE("density and posterior identities") {
  FiniteChannel twins({Pmf::validated({0.6, 0.4}), Pmf::validated({0.6, 0.4})});
  Prior p = Prior::uniform(2);
  auto dp = mean_density_and_posterior(twins, p, Order::make(3.0));
  for (std::size_t y = 0; y < 2; ++y) {
    CHECK(dp.density[y] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(dp.posterior.entries[y][0] == doctest::Approx(0.5).epsilon(1e-13));
  }

  // symmetric binary channel at order two: at each output the density is the
  // quadratic mean of the row masses over their arithmetic mean
  FiniteChannel ch = bsc(0.1);
  auto d2 = mean_density_and_posterior(ch, p, Order::make(2.0));
  double expected = std::sqrt(0.5 * (0.81 + 0.01)) / 0.5;
  CHECK(d2.density[0] == doctest::Approx(expected).epsilon(1e-13));
  CHECK(d2.density[1] == doctest::Approx(expected).epsilon(1e-13));

  CHECK_THROWS_AS(mean_density_and_posterior(ch, p, Order::zero()), OrderOutOfRange);
  CHECK_THROWS_AS(mean_density_and_posterior(ch, p, Order::infinity()), OrderOutOfRange);

  rng::Engine eng(31);
  for (int i = 0; i < 60; ++i) {
    FiniteChannel rch = random_channel(eng, 2 + eng.below(4), 2 + eng.below(4));
    Prior rp = random_prior(eng, rch.input_size());
    double av = std::exp(eng.uniform(std::log(0.05), std::log(20.0)));
    auto rdp = mean_density_and_posterior(rch, rp, Order::make(av));
    double dmin = rp.min_supported_mass();
    double bound = std::pow(dmin, (1.0 - av) / av);
    for (std::size_t y = 0; y < rch.output_size(); ++y) {
      if (!rdp.posterior.supported[y]) continue;
      double col = 0.0;
      for (std::size_t w = 0; w < rch.input_size(); ++w) col += rdp.posterior.entries[y][w];
      CHECK(col == doctest::Approx(1.0).epsilon(1e-10));
      if (av <= 1.0) {
        CHECK(rdp.density[y] >= bound - 1e-10);
        CHECK(rdp.density[y] <= 1.0 + 1e-10);
      } else {
        CHECK(rdp.density[y] >= 1.0 - 1e-10);
        CHECK(rdp.density[y] <= bound + 1e-10);
      }
    }
  }
}

TEST_CASE("information vanishes when all rows look alike from the prior") {
  FiniteChannel ch = symmetric_quaternary(0.25);  // every row is uniform
  for (double beta : {0.0, 0.3, 1.0}) {
    Prior p = Prior::validated({beta / 2, beta / 2, (1 - beta) / 2, (1 - beta) / 2});
    for (Order a : {Order::make(0.5), Order::one(), Order::make(3.0), Order::infinity()}) {
      CHECK(renyi_information(ch, p, a) == doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  CHECK(renyi_information(bsc(0.1), Prior::point_mass(2, 1), Order::make(2.0)) ==
        doctest::Approx(0.0));
}

TEST_CASE("noiseless binary information equals log 2, against a grid oracle") {
  FiniteChannel ch = identity_channel(2);
  Prior p = Prior::uniform(2);
  Order a = Order::make(0.5);
  double info = renyi_information(ch, p, a);
  CHECK(info == doctest::Approx(std::log(2.0)).epsilon(1e-13));

  // independent oracle: minimize the joint divergence over a fine grid of
  // reference pmfs
  double best = kInf;
  const int R = 4000;
  for (int k = 0; k <= R; ++k) {
    double q0 = static_cast<double>(k) / R;
    best = std::min(best, joint_divergence(ch, p, FiniteMeasure({q0, 1.0 - q0}), a));
  }
  CHECK(best >= info - 1e-12);
  CHECK(best <= info + 1e-6);
}

TEST_CASE("information bounds and the order-zero branch") {
  rng::Engine eng(37);
  for (int i = 0; i < 60; ++i) {
    FiniteChannel ch = random_channel(eng, 2 + eng.below(4), 2 + eng.below(4));
    Prior p = random_prior(eng, ch.input_size());
    for (Order a : {Order::zero(), Order::make(0.3), Order::one(), Order::make(4.0),
                    Order::infinity()}) {
      double info = renyi_information(ch, p, a);
      CHECK(info >= 0.0);
      CHECK(info <= std::log(static_cast<double>(p.support().size())) + 1e-12);
    }
  }
  // order-zero value on the noiseless channel: -log of the largest prior mass
  Prior p = Prior::validated({0.7, 0.3});
  CHECK(renyi_information(identity_channel(2), p, Order::zero()) ==
        doctest::Approx(-std::log(0.7)).epsilon(1e-14));
}

TEST_CASE("the exponent function and its information identity") {
  FiniteChannel ch = bsc(0.1);
  Prior p = Prior::uniform(2);
  CHECK(gallager_e0(0.0, ch, p) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(gallager_e0(-1.0, ch, p), RhoOutOfRange);

  // rho = 1 against the order-1/2 information
  double e0 = gallager_e0(1.0, ch, p);
  CHECK(e0 == doctest::Approx(renyi_information(ch, p, Order::make(0.5))).epsilon(1e-14));

  rng::Engine eng(41);
  for (int i = 0; i < 100; ++i) {
    FiniteChannel rch = random_channel(eng, 2 + eng.below(4), 2 + eng.below(4));
    Prior rp = random_prior(eng, rch.input_size());
    double rho = eng.uniform() < 0.5 ? eng.uniform(-0.9, -0.001) : eng.uniform(0.001, 8.0);
    double lhs = gallager_e0(rho, rch, rp);
    double rhs = rho * renyi_information(rch, rp, Order::make(1.0 / (1.0 + rho)));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("the normalized mean and its minimizing property") {
  FiniteChannel ch = bsc(0.2);
  Pmf row = renyi_mean(ch, Prior::point_mass(2, 0), Order::make(3.0));
  CHECK(row[0] == doctest::Approx(0.8).epsilon(1e-14));

  // two rows supported on the upper half of the alphabet: the order-two mean
  // splits evenly there by symmetry
  FiniteChannel disjoint({Pmf::validated({0.0, 0.0, 0.9, 0.1}),
                          Pmf::validated({0.0, 0.0, 0.1, 0.9})});
  Pmf q = renyi_mean(disjoint, Prior::uniform(2), Order::make(2.0));
  CHECK(q[0] == doctest::Approx(0.0));
  CHECK(q[1] == doctest::Approx(0.0));
  CHECK(q[2] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(q[3] == doctest::Approx(0.5).epsilon(1e-13));

  rng::Engine eng(43);
  for (int i = 0; i < 20; ++i) {
    FiniteChannel rch = random_channel(eng, 2 + eng.below(3), 2);
    Prior rp = random_prior(eng, rch.input_size());
    Order a = Order::make(std::exp(eng.uniform(std::log(0.1), std::log(10.0))));
    Pmf qa = renyi_mean(rch, rp, a);
    double at_mean = joint_divergence(rch, rp, qa.measure(), a);
    const int R = 500;
    for (int k = 0; k <= R; ++k) {
      double q0 = static_cast<double>(k) / R;
      double v = joint_divergence(rch, rp, FiniteMeasure({q0, 1.0 - q0}), a);
      CHECK(v >= at_mean - 1e-11);
    }
  }
}

TEST_CASE("order-zero mean reduces to the order-one mean without ties") {
  FiniteChannel ch = identity_channel(3);
  Prior p = Prior::uniform(3);
  Pmf q0 = renyi_mean(ch, p, Order::zero());
  for (std::size_t y = 0; y < 3; ++y) CHECK(q0[y] == doctest::Approx(1.0 / 3).epsilon(1e-13));
}

TEST_CASE("joint divergence decomposition and support violations") {
  FiniteChannel ch = bsc(0.1);
  Prior p = Prior::uniform(2);
  CHECK(joint_divergence(ch, p, FiniteMeasure({1.0, 0.0}), Order::make(2.0)) == kInf);

  rng::Engine eng(47);
  for (int i = 0; i < 1000; ++i) {
    FiniteChannel rch = random_channel(eng, 1 + eng.below(5), 1 + eng.below(5));
    Prior rp = random_prior(eng, rch.input_size());
    Pmf q = Pmf::validated(eng.dirichlet(rch.output_size()));
    double u = eng.uniform();
    Order a = u < 0.15 ? Order::one()
                       : (u < 0.3 ? Order::infinity()
                                  : Order::make(std::exp(eng.uniform(std::log(0.02),
                                                                     std::log(50.0)))));
    double lhs = joint_divergence(rch, rp, q.measure(), a);
    double rhs = renyi_information(rch, rp, a) +
                 renyi_divergence(renyi_mean(rch, rp, a), q, a);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
    // the normalized mean itself makes the second term vanish
    Pmf qa = renyi_mean(rch, rp, a);
    CHECK(joint_divergence(rch, rp, qa.measure(), a) ==
          doctest::Approx(renyi_information(rch, rp, a)).epsilon(1e-11));
  }
}

TEST_CASE("information derivative matches finite differences") {
  rng::Engine eng(53);
  for (int i = 0; i < 40; ++i) {
    FiniteChannel ch = random_channel(eng, 2 + eng.below(4), 2 + eng.below(4));
    Prior p = random_prior(eng, ch.input_size());
    double av = eng.uniform() < 0.25 ? 1.0 : std::exp(eng.uniform(std::log(0.2), std::log(5.0)));
    if (std::abs(av - 1.0) < 1e-3 && av != 1.0) continue;
    double deriv = renyi_information_derivative(ch, p, Order::make(av));
    CHECK(deriv >= -1e-12);  // information is nondecreasing in the order
    double h = 1e-5 * std::max(av, 0.5);
    double fd = (renyi_information(ch, p, Order::make(av + h)) -
                 renyi_information(ch, p, Order::make(av - h))) /
                (2.0 * h);
    if (std::abs(deriv) > 1e-6) {
      CHECK(fd == doctest::Approx(deriv).epsilon(1e-4));
    }
  }
}

TEST_CASE("total variation and prior helpers") {
  Pmf a = Pmf::validated({1.0, 0.0});
  Pmf b = Pmf::validated({0.0, 1.0});
  CHECK(total_variation(a, b) == doctest::Approx(2.0));
  Prior p = Prior::validated({0.5, 0.0, 0.5});
  CHECK(p.support() == std::vector<std::size_t>{0, 2});
  CHECK(p.min_supported_mass() == doctest::Approx(0.5));
  CHECK_THROWS_AS(p.check_matches(bsc(0.1)), SupportMismatch);
}
