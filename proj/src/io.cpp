#include "renyi/io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace renyi::io {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string json_number(double v) {
  if (std::isinf(v) || std::isnan(v)) return "\"" + format_double(v) + "\"";
  return format_double(v);
}

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON input");
  return j;
}

std::vector<double> as_double_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a JSON array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_number(v[i]);
  }
  out += "]";
  return out;
}

}  // namespace

FiniteChannel parse_channel(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("rows"))
    throw ParseError("channel JSON must be an object with a \"rows\" array");
  std::vector<Pmf> rows;
  for (const auto& row_json : j["rows"]) {
    auto row = as_double_vector(row_json, "channel row");
    double sum = 0.0;
    for (double x : row) {
      if (x < 0.0) throw ParseError("channel entries must be non-negative");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ParseError("channel row deviates from unit sum by more than 1e-9");
    for (auto& x : row) x /= sum;
    rows.push_back(Pmf::validated(std::move(row)));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return FiniteChannel(std::move(rows), std::move(labels));
}

std::string channel_to_json(const FiniteChannel& ch) {
  std::string out = "{\"rows\":[";
  for (std::size_t w = 0; w < ch.input_size(); ++w) {
    if (w) out += ",";
    out += join_numbers(ch.row(w).weights());
  }
  out += "]";
  if (!ch.labels.empty()) {
    out += ",\"labels\":[";
    for (std::size_t w = 0; w < ch.labels.size(); ++w) {
      if (w) out += ",";
      out += json(ch.labels[w]).dump();
    }
    out += "]";
  }
  out += "}";
  return out;
}

FiniteMeasure parse_measure(const std::string& json_text) {
  json j = parse_json(json_text);
  if (j.is_object() && j.contains("weights"))
    return FiniteMeasure(as_double_vector(j["weights"], "measure weights"));
  return FiniteMeasure(as_double_vector(j, "measure"));
}

Prior parse_prior(const std::string& json_text) {
  json j = parse_json(json_text);
  if (j.is_object() && j.contains("probs"))
    return Prior::validated(as_double_vector(j["probs"], "prior"));
  return Prior::validated(as_double_vector(j, "prior"));
}

ConstraintSet parse_constraint(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("constraint JSON must be an object with a \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "unconstrained") return ConstraintSet::unconstrained();
  if (kind == "support") {
    std::vector<std::size_t> idx;
    for (const auto& v : j.at("indices")) idx.push_back(v.get<std::size_t>());
    return ConstraintSet::support_restriction(std::move(idx));
  }
  if (kind == "linear_cost") {
    auto costs = as_double_vector(j.at("costs"), "costs");
    double budget = j.at("budget").get<double>();
    std::string dir = j.value("dir", "le");
    if (dir != "le" && dir != "ge") throw ParseError("constraint dir must be \"le\" or \"ge\"");
    return ConstraintSet::linear_cost(std::move(costs), budget,
                                      dir == "le" ? ConstraintSet::Direction::LessEqual
                                                  : ConstraintSet::Direction::GreaterEqual);
  }
  throw ParseError("unknown constraint kind: " + kind);
}

PoissonFamilySpec parse_family_spec(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object()) throw ParseError("family spec must be a JSON object");
  PoissonFamilySpec spec;
  spec.horizon = j.at("T").get<double>();
  spec.floor = j.value("a", 0.0);
  if (j.contains("g")) {
    spec.has_envelope = true;
    spec.envelope.breaks = as_double_vector(j["g"].at("breaks"), "envelope breaks");
    spec.envelope.values = as_double_vector(j["g"].at("values"), "envelope values");
  } else {
    spec.ceiling = j.at("b").get<double>();
  }
  if (j.contains("c")) spec.mean_value = j["c"].get<double>();
  if (j.contains("constraint")) {
    std::string c = j["constraint"].get<std::string>();
    if (c == "none") spec.constraint = PoissonConstraintKind::None;
    else if (c == "mean_eq") spec.constraint = PoissonConstraintKind::MeanEq;
    else if (c == "mean_le") spec.constraint = PoissonConstraintKind::MeanLe;
    else if (c == "mean_ge") spec.constraint = PoissonConstraintKind::MeanGe;
    else throw ParseError("unknown constraint: " + c);
  }
  spec.check();
  return spec;
}

DensityOnCircle parse_density(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("density JSON must be an object with a \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") return DensityOnCircle::uniform();
  if (kind == "linear") return DensityOnCircle::linear();
  if (kind == "power") return DensityOnCircle::power(j.at("beta").get<double>());
  if (kind == "piecewise") {
    PiecewiseConstant pc;
    pc.breaks = as_double_vector(j.at("breaks"), "density breaks");
    pc.values = as_double_vector(j.at("values"), "density values");
    return DensityOnCircle::piecewise(std::move(pc));
  }
  throw ParseError("unknown density kind: " + kind);
}

std::string solution_to_json(const CapacitySolution& sol) {
  std::string out = "{";
  out += "\"order\":";
  out += sol.order.is_infinity() ? "\"inf\"" : json_number(sol.order.value());
  out += ",\"capacity\":" + json_number(sol.capacity);
  out += ",\"lower\":" + json_number(sol.lower_bound);
  out += ",\"upper\":" + json_number(sol.upper_bound);
  out += ",\"gap\":" + json_number(sol.gap);
  out += ",\"iterations\":" + std::to_string(sol.iterations);
  out += ",\"prior\":" + join_numbers(sol.prior.probs());
  out += ",\"center\":" + join_numbers(sol.center.weights());
  out += "}";
  return out;
}

std::string curve_to_csv(const CurveResult& curve) {
  std::string out = "alpha,capacity,lower,upper,gap\n";
  for (const auto& pt : curve.points) {
    out += pt.order.is_infinity() ? "inf" : format_double(pt.order.value());
    out += "," + format_double(pt.capacity);
    out += "," + format_double(pt.lower_bound);
    out += "," + format_double(pt.upper_bound);
    out += "," + format_double(pt.gap);
    out += "\n";
  }
  return out;
}

std::string poisson_capacity_to_json(double capacity, double center_intensity) {
  return "{\"capacity\":" + json_number(capacity) +
         ",\"center_intensity\":" + json_number(center_intensity) + "}";
}

std::string poisson_product_to_json(const PoissonProductCapacity& result, double horizon) {
  std::string out = "{\"capacity\":" + json_number(result.capacity);
  out += ",\"center_intensity\":{\"breaks\":" + join_numbers(result.center_intensity.breaks);
  out += ",\"values\":" + join_numbers(result.center_intensity.values);
  out += ",\"T\":" + json_number(horizon) + "}}";
  return out;
}

std::string mc_estimate_to_json(const McEstimate& est) {
  return "{\"estimate\":" + json_number(est.estimate) +
         ",\"stderr\":" + json_number(est.stderr_) +
         ",\"samples\":" + std::to_string(est.samples) + "}";
}

}  // namespace renyi::io
