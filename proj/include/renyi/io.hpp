#pragma once

#include <string>
#include <vector>

#include "renyi/capacity.hpp"
#include "renyi/families.hpp"
#include "renyi/measure.hpp"

namespace renyi::io {

// 17 significant digits via std::to_chars: locale-free and byte-stable.
// Infinities render as "inf" / "-inf".
std::string format_double(double v);
// Same, quoted as a JSON value ("inf" must be a string to stay valid JSON).
std::string json_number(double v);

FiniteChannel parse_channel(const std::string& json_text);
std::string channel_to_json(const FiniteChannel& ch);

FiniteMeasure parse_measure(const std::string& json_text);
Prior parse_prior(const std::string& json_text);

ConstraintSet parse_constraint(const std::string& json_text);
PoissonFamilySpec parse_family_spec(const std::string& json_text);
DensityOnCircle parse_density(const std::string& json_text);

std::string solution_to_json(const CapacitySolution& sol);
std::string curve_to_csv(const CurveResult& curve);
std::string poisson_capacity_to_json(double capacity, double center_intensity);
std::string poisson_product_to_json(const PoissonProductCapacity& result, double horizon);
std::string mc_estimate_to_json(const McEstimate& est);

}  // namespace renyi::io
