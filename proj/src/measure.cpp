#include "renyi/measure.hpp"

#include <cmath>
#include <numeric>

#include "renyi/numeric.hpp"

namespace renyi {

FiniteMeasure::FiniteMeasure(std::vector<double> w) : weights(std::move(w)) {
  if (weights.empty()) throw DomainError("measure needs a non-empty alphabet");
  for (double x : weights) {
    if (!(x >= 0.0)) throw DomainError("measure weights must be non-negative");
  }
}

double FiniteMeasure::norm() const {
  double s = 0.0;
  for (double x : weights) s += x;
  return s;
}

Pmf Pmf::validated(std::vector<double> weights) {
  if (weights.empty()) throw DomainError("pmf needs a non-empty alphabet");
  double sum = 0.0;
  for (double x : weights) {
    if (!(x >= 0.0) || x > 1.0 + kSumTolerance)
      throw DomainError("pmf weights must lie in [0,1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw DomainError("pmf weights must sum to 1 within 1e-12");
  return Pmf(std::move(weights));
}

FiniteChannel::FiniteChannel(std::vector<Pmf> r, std::vector<std::string> l)
    : rows(std::move(r)), labels(std::move(l)) {
  if (rows.empty()) throw DomainError("channel needs at least one row");
  const std::size_t m = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != m) throw AlphabetMismatch("channel rows must share one output alphabet");
  }
  if (!labels.empty() && labels.size() != rows.size())
    throw DomainError("labels must be absent or one per row");
}

Prior Prior::validated(std::vector<double> probs) {
  Pmf pmf = Pmf::validated(std::move(probs));
  std::vector<std::size_t> support;
  for (std::size_t w = 0; w < pmf.size(); ++w) {
    if (pmf[w] > 0.0) support.push_back(w);
  }
  if (support.empty()) throw DomainError("prior must have non-empty support");
  return Prior(std::move(pmf), std::move(support));
}

Prior Prior::uniform(std::size_t n) {
  return validated(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Prior Prior::point_mass(std::size_t n, std::size_t w) {
  std::vector<double> p(n, 0.0);
  p.at(w) = 1.0;
  return validated(std::move(p));
}

double Prior::min_supported_mass() const {
  double m = 1.0;
  for (std::size_t w : support_) m = std::min(m, probs_[w]);
  return m;
}

void Prior::check_matches(const FiniteChannel& ch) const {
  if (size() != ch.input_size())
    throw SupportMismatch("prior dimension does not match channel input size");
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw AlphabetMismatch("total variation of unequal alphabets");
  return sum_abs_diff(a, b);
}

double total_variation(const Pmf& a, const Pmf& b) {
  return total_variation(std::span<const double>(a.weights()),
                         std::span<const double>(b.weights()));
}

double total_variation(const FiniteMeasure& a, const FiniteMeasure& b) {
  return total_variation(std::span<const double>(a.weights),
                         std::span<const double>(b.weights));
}

namespace {

void check_partition(const OutputPartition& partition, std::size_t m) {
  std::vector<bool> seen(m, false);
  for (const auto& cell : partition) {
    if (cell.empty()) throw InvalidPartition("partition cell is empty");
    for (std::size_t y : cell) {
      if (y >= m) throw InvalidPartition("partition index out of range");
      if (seen[y]) throw InvalidPartition("partition cells overlap");
      seen[y] = true;
    }
  }
  for (std::size_t y = 0; y < m; ++y) {
    if (!seen[y]) throw InvalidPartition("partition does not cover all outputs");
  }
}

}  // namespace

FiniteChannel coarsen_channel(const FiniteChannel& ch, const OutputPartition& partition) {
  check_partition(partition, ch.output_size());
  std::vector<Pmf> rows;
  rows.reserve(ch.input_size());
  for (const auto& row : ch.rows) {
    std::vector<double> merged(partition.size(), 0.0);
    for (std::size_t c = 0; c < partition.size(); ++c) {
      for (std::size_t y : partition[c]) merged[c] += row[y];
    }
    rows.push_back(Pmf::validated(std::move(merged)));
  }
  return FiniteChannel(std::move(rows), ch.labels);
}

FiniteMeasure coarsen_measure(const FiniteMeasure& m, const OutputPartition& partition) {
  check_partition(partition, m.size());
  std::vector<double> merged(partition.size(), 0.0);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    for (std::size_t y : partition[c]) merged[c] += m[y];
  }
  return FiniteMeasure(std::move(merged));
}

}  // namespace renyi
