#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "renyi/errors.hpp"

namespace renyi::verify {

struct Tolerances {
  double solver_tol = 1e-8;
  double quad_tol = 1e-9;
  double arithmetic_tol = 1e-12;
  double slack_factor = 10.0;  // multiplies the relevant tolerance before failing
};

// Outcome of one randomized property suite. A margin measures how far the
// tested inequality is from being violated; instances fail when the margin
// drops below -(slack_factor * tolerance). Violations reproduce by re-running
// the suite with the recorded seed.
struct PropertyReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::size_t worst_instance = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

struct SuiteInfo {
  std::string id;
  std::string property;  // the quantitative statement the suite asserts
};

const std::vector<SuiteInfo>& suite_registry();
bool is_registered(const std::string& suite_id);

// Runs one named suite on `n_instances` randomized instances derived
// deterministically from (seed, suite id).
PropertyReport run_suite(const std::string& suite_id, std::size_t n_instances,
                         std::uint64_t seed, const Tolerances& tol = {});

// Runs several suites (all registered ones when `ids` is empty).
std::vector<PropertyReport> run_suites(const std::vector<std::string>& ids,
                                       std::size_t n_instances, std::uint64_t seed,
                                       const Tolerances& tol = {});

std::string reports_to_json(const std::vector<PropertyReport>& reports);
std::string coverage_to_json();

}  // namespace renyi::verify
