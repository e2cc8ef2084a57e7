#include "renyi/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "renyi/capacity.hpp"
#include "renyi/divergence.hpp"
#include "renyi/families.hpp"
#include "renyi/io.hpp"
#include "renyi/mean.hpp"
#include "renyi/verify.hpp"

namespace renyi::cli {

namespace {

// Positional JSON arguments may be inline documents or file paths.
std::string load_json_argument(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open input file: " + arg);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Order> parse_alpha_grid(const std::string& spec) {
  // Range form lo:hi:n[:log]; otherwise a comma-separated list of orders.
  std::vector<std::string> parts;
  {
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ':')) parts.push_back(token);
  }
  if (parts.size() == 3 || parts.size() == 4) {
    bool log_spacing = parts.size() == 4;
    if (log_spacing && parts[3] != "log")
      throw ParseError("grid spec must end in :log or have the form lo:hi:n");
    double lo = Order::parse(parts[0]).value();
    double hi = Order::parse(parts[1]).value();
    long n = std::stol(parts[2]);
    if (!(lo > 0.0) || !(hi >= lo) || n < 1)
      throw ParseError("grid spec needs 0 < lo <= hi and n >= 1");
    if (log_spacing && std::isinf(hi))
      throw ParseError("log grids need a finite upper order");
    std::vector<Order> grid;
    for (long i = 0; i < n; ++i) {
      double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      double a = log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                             : lo + t * (hi - lo);
      if (i + 1 == n) a = hi;
      grid.push_back(Order::make(a));
    }
    return grid;
  }
  std::vector<Order> grid;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) grid.push_back(Order::parse(token));
  if (grid.empty()) throw ParseError("empty order grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i + 1].value() < grid[i].value())
      throw ParseError("order grid must be sorted");
  }
  return grid;
}

Prior prior_or_uniform(const std::string& prior_arg, std::size_t n) {
  if (prior_arg.empty()) return Prior::uniform(n);
  return io::parse_prior(load_json_argument(prior_arg));
}

PoissonConstraintKind mode_constraint(const std::string& mode) {
  if (mode == "mean") return PoissonConstraintKind::MeanEq;
  if (mode == "le") return PoissonConstraintKind::MeanLe;
  if (mode == "ge") return PoissonConstraintKind::MeanGe;
  return PoissonConstraintKind::None;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi information measures for finite channels and analytic families"};
  app.require_subcommand(1);

  // divergence
  std::string dv_w, dv_q, dv_alpha;
  auto* divergence_cmd =
      app.add_subcommand("divergence", "order-alpha divergence between two measures");
  divergence_cmd->add_option("w", dv_w, "first measure (JSON file or inline)")->required();
  divergence_cmd->add_option("q", dv_q, "second measure (JSON file or inline)")->required();
  divergence_cmd->add_option("--alpha", dv_alpha, "order (0, 1, inf or a decimal)")
      ->required();

  // info
  std::string info_channel, info_prior, info_alpha;
  auto* info_cmd = app.add_subcommand("info", "Renyi information for a prior");
  info_cmd->add_option("channel", info_channel, "channel JSON")->required();
  info_cmd->add_option("--prior", info_prior, "prior JSON (default uniform)");
  info_cmd->add_option("--alpha", info_alpha, "order")->required();

  // mean
  std::string mean_channel, mean_prior, mean_alpha;
  auto* mean_cmd = app.add_subcommand("mean", "Renyi mean pmf for a prior");
  mean_cmd->add_option("channel", mean_channel, "channel JSON")->required();
  mean_cmd->add_option("--prior", mean_prior, "prior JSON (default uniform)");
  mean_cmd->add_option("--alpha", mean_alpha, "order")->required();

  // capacity
  std::string cap_channel, cap_alpha;
  double cap_tol = 1e-9;
  std::size_t cap_iter = 50000;
  auto* cap_cmd = app.add_subcommand("capacity", "certified channel capacity");
  cap_cmd->add_option("channel", cap_channel, "channel JSON")->required();
  cap_cmd->add_option("--alpha", cap_alpha, "order in (0, inf]")->required();
  cap_cmd->add_option("--tol", cap_tol, "certificate gap target");
  cap_cmd->add_option("--max-iter", cap_iter, "iteration budget");

  // curve
  std::string curve_channel, curve_alphas;
  double curve_tol = 1e-9;
  std::size_t curve_iter = 50000;
  auto* curve_cmd = app.add_subcommand("curve", "capacity over an order grid, as CSV");
  curve_cmd->add_option("channel", curve_channel, "channel JSON")->required();
  curve_cmd->add_option("--alphas", curve_alphas, "grid lo:hi:n[:log] or a comma list")
      ->required();
  curve_cmd->add_option("--tol", curve_tol, "certificate gap target");
  curve_cmd->add_option("--max-iter", curve_iter, "iteration budget");

  // constrained
  std::string cons_channel, cons_alpha, cons_spec;
  double cons_tol = 1e-9;
  std::size_t cons_iter = 50000;
  auto* cons_cmd = app.add_subcommand("constrained", "capacity over a constrained prior set");
  cons_cmd->add_option("channel", cons_channel, "channel JSON")->required();
  cons_cmd->add_option("--alpha", cons_alpha, "finite positive order")->required();
  cons_cmd->add_option("--constraint", cons_spec, "constraint JSON")->required();
  cons_cmd->add_option("--tol", cons_tol, "certificate gap target");
  cons_cmd->add_option("--max-iter", cons_iter, "iteration budget");

  // shift
  std::string shift_density, shift_alpha;
  double shift_tol = 1e-9;
  auto* shift_cmd = app.add_subcommand("shift", "capacity of a mod-1 shift family");
  shift_cmd->add_option("density", shift_density, "density JSON")->required();
  shift_cmd->add_option("--alpha", shift_alpha, "positive order")->required();
  shift_cmd->add_option("--quad-tol", shift_tol, "quadrature tolerance");

  // poisson
  std::string poisson_spec, poisson_alpha, poisson_mode;
  double poisson_tol = 1e-9;
  auto* poisson_cmd = app.add_subcommand("poisson", "Poisson family capacity and center");
  poisson_cmd->add_option("spec", poisson_spec, "family spec JSON")->required();
  poisson_cmd->add_option("--alpha", poisson_alpha, "finite positive order")->required();
  poisson_cmd->add_option("--mode", poisson_mode, "one of mean|le|ge|bounded|product")
      ->required()
      ->check(CLI::IsMember({"mean", "le", "ge", "bounded", "product"}));
  poisson_cmd->add_option("--quad-tol", poisson_tol, "quadrature tolerance");

  // poisson-mc
  double mc_f = 1.0, mc_g = 1.0, mc_T = 1.0;
  std::string mc_alpha;
  std::size_t mc_n = 100000;
  std::uint64_t mc_seed = 1;
  auto* mc_cmd = app.add_subcommand("poisson-mc", "Monte-Carlo Poisson divergence");
  mc_cmd->add_option("--f", mc_f, "first constant intensity")->required();
  mc_cmd->add_option("--g", mc_g, "second constant intensity")->required();
  mc_cmd->add_option("--T", mc_T, "horizon")->required();
  mc_cmd->add_option("--alpha", mc_alpha, "order in (0,1) or (1,3]")->required();
  mc_cmd->add_option("--n", mc_n, "sample count");
  mc_cmd->add_option("--seed", mc_seed, "sampler seed");

  // discretize
  std::string disc_spec, disc_out;
  std::size_t disc_bins = 1, disc_levels = 2;
  auto* disc_cmd = app.add_subcommand("discretize", "bin-count channel for a Poisson family");
  disc_cmd->add_option("spec", disc_spec, "family spec JSON")->required();
  disc_cmd->add_option("--bins", disc_bins, "number of time bins")->required();
  disc_cmd->add_option("--levels", disc_levels, "number of intensity levels")->required();
  disc_cmd->add_option("--out", disc_out, "output file (default stdout)");

  // verify
  std::vector<std::string> verify_suites;
  std::size_t verify_n = 500;
  std::uint64_t verify_seed = 1;
  bool verify_coverage = false;
  double verify_solver_tol = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "randomized property suites");
  verify_cmd->add_option("suites", verify_suites, "suite ids (default: all)");
  verify_cmd->add_option("--n", verify_n, "instances per suite");
  verify_cmd->add_option("--seed", verify_seed, "master seed");
  verify_cmd->add_option("--solver-tol", verify_solver_tol, "capacity solver tolerance");
  verify_cmd->add_flag("--coverage", verify_coverage, "print the suite coverage table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (divergence_cmd->parsed()) {
      FiniteMeasure w = io::parse_measure(load_json_argument(dv_w));
      FiniteMeasure q = io::parse_measure(load_json_argument(dv_q));
      out << io::format_double(renyi_divergence(w, q, Order::parse(dv_alpha))) << "\n";
      return 0;
    }
    if (info_cmd->parsed()) {
      FiniteChannel ch = io::parse_channel(load_json_argument(info_channel));
      Prior p = prior_or_uniform(info_prior, ch.input_size());
      out << io::format_double(renyi_information(ch, p, Order::parse(info_alpha))) << "\n";
      return 0;
    }
    if (mean_cmd->parsed()) {
      FiniteChannel ch = io::parse_channel(load_json_argument(mean_channel));
      Prior p = prior_or_uniform(mean_prior, ch.input_size());
      Pmf q = renyi_mean(ch, p, Order::parse(mean_alpha));
      out << "[";
      for (std::size_t y = 0; y < q.size(); ++y) {
        if (y) out << ",";
        out << io::format_double(q[y]);
      }
      out << "]\n";
      return 0;
    }
    if (cap_cmd->parsed()) {
      FiniteChannel ch = io::parse_channel(load_json_argument(cap_channel));
      auto sol = solve_capacity(ch, Order::parse(cap_alpha), cap_tol, cap_iter);
      out << io::solution_to_json(sol) << "\n";
      return 0;
    }
    if (curve_cmd->parsed()) {
      FiniteChannel ch = io::parse_channel(load_json_argument(curve_channel));
      auto curve = capacity_curve(ch, parse_alpha_grid(curve_alphas), curve_tol, curve_iter);
      out << io::curve_to_csv(curve);
      return 0;
    }
    if (cons_cmd->parsed()) {
      FiniteChannel ch = io::parse_channel(load_json_argument(cons_channel));
      ConstraintSet constraint = io::parse_constraint(load_json_argument(cons_spec));
      auto sol = solve_constrained_capacity(ch, Order::parse(cons_alpha), constraint,
                                            cons_tol, cons_iter);
      out << io::solution_to_json(sol) << "\n";
      return 0;
    }
    if (shift_cmd->parsed()) {
      DensityOnCircle f = io::parse_density(load_json_argument(shift_density));
      out << io::format_double(shift_capacity(f, Order::parse(shift_alpha), shift_tol))
          << "\n";
      return 0;
    }
    if (poisson_cmd->parsed()) {
      PoissonFamilySpec spec = io::parse_family_spec(load_json_argument(poisson_spec));
      Order alpha = Order::parse(poisson_alpha);
      if (poisson_mode == "product") {
        if (!spec.has_envelope)
          throw DomainError("product mode needs an envelope \"g\" in the family spec");
        auto res = poisson_product_capacity(spec.horizon, spec.floor, spec.envelope, alpha,
                                            poisson_tol);
        out << io::poisson_product_to_json(res, spec.horizon) << "\n";
        return 0;
      }
      if (spec.has_envelope)
        throw DomainError("constant-ceiling modes need \"b\" in the family spec");
      PoissonCapacity res{0.0, 0.0};
      if (poisson_mode == "bounded") {
        res = poisson_bounded_capacity(spec.horizon, spec.floor, spec.ceiling, alpha);
      } else {
        res = poisson_constrained_capacity(spec.horizon, spec.floor, spec.ceiling,
                                           spec.mean_value, mode_constraint(poisson_mode),
                                           alpha);
      }
      out << io::poisson_capacity_to_json(res.capacity, res.center_intensity) << "\n";
      return 0;
    }
    if (mc_cmd->parsed()) {
      auto est =
          poisson_mc_divergence_const(mc_f, mc_g, mc_T, Order::parse(mc_alpha), mc_n, mc_seed);
      out << io::mc_estimate_to_json(est) << "\n";
      return 0;
    }
    if (disc_cmd->parsed()) {
      PoissonFamilySpec spec = io::parse_family_spec(load_json_argument(disc_spec));
      FiniteChannel ch = poisson_discretize(spec, disc_bins, disc_levels);
      std::string text = io::channel_to_json(ch);
      if (disc_out.empty()) {
        out << text << "\n";
      } else {
        std::ofstream f(disc_out);
        if (!f) throw DomainError("cannot write output file: " + disc_out);
        f << text << "\n";
      }
      return 0;
    }
    if (verify_cmd->parsed()) {
      if (verify_coverage) {
        out << verify::coverage_to_json() << "\n";
        return 0;
      }
      verify::Tolerances tol;
      tol.solver_tol = verify_solver_tol;
      auto reports = verify::run_suites(verify_suites, verify_n, verify_seed, tol);
      out << verify::reports_to_json(reports) << "\n";
      for (const auto& r : reports) {
        if (r.violations > 0) return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "{\"error\":\"" << e.code() << "\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  }
  err << "no subcommand selected\n";
  return 2;
}

}  // namespace renyi::cli
