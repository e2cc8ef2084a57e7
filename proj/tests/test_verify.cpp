#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "renyi/verify.hpp"

using namespace renyi;

TEST_CASE("registry covers every in-scope quantitative property") {
  const std::vector<std::string> expected = {
      "pinsker",
      "divergence-order-monotone",
      "divergence-scaling",
      "divergence-convexity-q",
      "divergence-joint-quasiconvexity",
      "dpi-coarsening",
      "mean-lipschitz",
      "mean-norm-logconvex",
      "prior-decomposition",
      "info-order-monotone",
      "info-derivative-fd",
      "e0-identity",
      "sibson-identity",
      "info-min-over-q",
      "capacity-order-monotone",
      "capacity-convex-transform",
      "uec-prior",
      "uec-order",
      "minimax-bruteforce",
      "ehb",
      "center-continuity",
      "union-bounds",
      "product-additivity",
      "epsilon-core",
      "convex-hull-invariance",
      "constrained-slack",
      "constrained-ehb",
      "poisson-closedform-vs-quadrature",
      "poisson-mc-vs-closedform",
      "poisson-discretize-lower-bound",
  };
  for (const auto& id : expected) {
    CAPTURE(id);
    CHECK(verify::is_registered(id));
  }
  CHECK(verify::suite_registry().size() == expected.size());
  for (const auto& info : verify::suite_registry()) {
    CHECK_FALSE(info.property.empty());
  }
}

TEST_CASE("unknown suites are rejected") {
  CHECK_THROWS_AS(verify::run_suite("no-such-suite", 1, 1), UnknownSuite);
  CHECK_THROWS_AS(verify::run_suites({"pinsker", "bogus"}, 1, 1), UnknownSuite);
}

TEST_CASE("suites are deterministic under a fixed seed") {
  auto a = verify::run_suite("pinsker", 50, 12345);
  auto b = verify::run_suite("pinsker", 50, 12345);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_instance == b.worst_instance);
  CHECK(a.seed == b.seed);
  auto c = verify::run_suite("pinsker", 50, 54321);
  CHECK(c.seed != a.seed);
}

TEST_CASE("spot runs of representative suites") {
  CHECK(verify::run_suite("pinsker", 300, 7).violations == 0);

  auto sibson = verify::run_suite("sibson-identity", 300, 7);
  CHECK(sibson.violations == 0);
  CHECK(sibson.worst_margin >= -1e-10);

  auto ehb = verify::run_suite("ehb", 100, 7);
  CHECK(ehb.violations == 0);
  CHECK(ehb.worst_margin >= -1e-7);

  CHECK(verify::run_suite("prior-decomposition", 300, 7).violations == 0);
  CHECK(verify::run_suite("info-min-over-q", 100, 7).violations == 0);
}

TEST_CASE("report serialization round-trips through JSON") {
  auto reports = verify::run_suites({"pinsker", "dpi-coarsening"}, 20, 3);
  auto j = nlohmann::json::parse(verify::reports_to_json(reports));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["property"] == "pinsker");
  CHECK(j[0]["instances"] == 20);
  CHECK(j[0].contains("violations"));
  CHECK(j[0].contains("worst_margin"));
  CHECK(j[0].contains("tolerance"));
  CHECK(j[0].contains("seed"));

  auto cov = nlohmann::json::parse(verify::coverage_to_json());
  REQUIRE(cov.is_array());
  CHECK(cov.size() == verify::suite_registry().size());
  CHECK(cov[0].contains("suite"));
  CHECK(cov[0].contains("property"));
}
