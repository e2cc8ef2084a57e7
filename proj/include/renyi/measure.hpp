#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "renyi/errors.hpp"
#include "renyi/order.hpp"

namespace renyi {

// Non-negative weights over a finite output alphabet. The zero measure can
// be represented but most operations reject it.
struct FiniteMeasure {
  std::vector<double> weights;

  FiniteMeasure() = default;
  explicit FiniteMeasure(std::vector<double> w);

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
  double norm() const;
  bool is_zero() const { return norm() == 0.0; }
};

// Probability mass function: a FiniteMeasure whose weights sum to one within
// 1e-12. Construction validates and never renormalizes.
class Pmf {
 public:
  static constexpr double kSumTolerance = 1e-12;

  static Pmf validated(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  FiniteMeasure measure() const { return FiniteMeasure(weights_); }

 private:
  explicit Pmf(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

// A finite set of probability mass functions over a common output alphabet,
// i.e. a row-stochastic matrix.
struct FiniteChannel {
  std::vector<Pmf> rows;
  std::vector<std::string> labels;  // optional; empty or one label per row

  FiniteChannel(std::vector<Pmf> r, std::vector<std::string> l = {});

  std::size_t input_size() const { return rows.size(); }
  std::size_t output_size() const { return rows.front().size(); }
  const Pmf& row(std::size_t w) const { return rows[w]; }
};

// Probability mass function over the rows of a channel.
class Prior {
 public:
  static Prior validated(std::vector<double> probs);
  static Prior uniform(std::size_t n);
  static Prior point_mass(std::size_t n, std::size_t w);

  const std::vector<double>& probs() const { return probs_.weights(); }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t w) const { return probs_[w]; }
  const std::vector<std::size_t>& support() const { return support_; }
  double min_supported_mass() const;

  // Throws SupportMismatch unless the prior has one mass per channel row.
  void check_matches(const FiniteChannel& ch) const;

 private:
  Prior(Pmf probs, std::vector<std::size_t> support)
      : probs_(std::move(probs)), support_(std::move(support)) {}
  Pmf probs_;
  std::vector<std::size_t> support_;
};

// Total variation norm of the difference of two weight vectors, i.e. the
// sum of absolute coordinate differences (twice the usual sup distance).
double total_variation(std::span<const double> a, std::span<const double> b);
double total_variation(const Pmf& a, const Pmf& b);
double total_variation(const FiniteMeasure& a, const FiniteMeasure& b);

// Output grouping for channel coarsening: disjoint non-empty cells covering
// every output index.
using OutputPartition = std::vector<std::vector<std::size_t>>;

// Merges output symbols per partition cell, summing probabilities per row.
FiniteChannel coarsen_channel(const FiniteChannel& ch, const OutputPartition& partition);
FiniteMeasure coarsen_measure(const FiniteMeasure& m, const OutputPartition& partition);

}  // namespace renyi
