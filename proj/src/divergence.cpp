#include "renyi/divergence.hpp"

#include <cmath>

#include "renyi/numeric.hpp"

namespace renyi {

double renyi_divergence_log(std::span<const double> log_w, std::span<const double> log_q,
                            Order alpha) {
  if (log_w.size() != log_q.size())
    throw AlphabetMismatch("divergence arguments must share one alphabet");
  const std::size_t m = log_w.size();

  switch (alpha.tag()) {
    case Order::Tag::Zero: {
      LogSumExpAccumulator acc;
      for (std::size_t y = 0; y < m; ++y) {
        if (log_w[y] > -kInf) acc.add(log_q[y]);
      }
      double lq = acc.value();
      return lq == -kInf ? kInf : -lq;
    }
    case Order::Tag::One: {
      double d = 0.0;
      for (std::size_t y = 0; y < m; ++y) {
        if (log_w[y] == -kInf) continue;
        if (log_q[y] == -kInf) return kInf;
        d += std::exp(log_w[y]) * (log_w[y] - log_q[y]);
      }
      return d;
    }
    case Order::Tag::Infinity: {
      double worst = -kInf;
      for (std::size_t y = 0; y < m; ++y) {
        if (log_w[y] == -kInf) continue;
        if (log_q[y] == -kInf) return kInf;
        worst = std::max(worst, log_w[y] - log_q[y]);
      }
      return worst == -kInf ? kInf : worst;
    }
    case Order::Tag::FiniteGeneral: {
      const double a = alpha.value();
      LogSumExpAccumulator acc;
      for (std::size_t y = 0; y < m; ++y) {
        if (log_w[y] == -kInf) continue;
        if (log_q[y] == -kInf) {
          if (a > 1.0) return kInf;  // w charges a q-null output
          continue;
        }
        acc.add(a * log_w[y] + (1.0 - a) * log_q[y]);
      }
      double ls = acc.value();
      if (ls == -kInf) return kInf;  // singular arguments at alpha < 1
      return ls / (a - 1.0);
    }
  }
  throw DomainError("unreachable order tag");
}

namespace {

std::vector<double> to_log(const FiniteMeasure& m) {
  std::vector<double> lg(m.size());
  for (std::size_t y = 0; y < m.size(); ++y) lg[y] = safe_log(m[y]);
  return lg;
}

}  // namespace

double renyi_divergence(const FiniteMeasure& w, const FiniteMeasure& q, Order alpha) {
  if (w.size() != q.size())
    throw AlphabetMismatch("divergence arguments must share one alphabet");
  if (w.is_zero() || q.is_zero())
    throw ZeroMeasure("divergence requires non-zero measures");
  return renyi_divergence_log(to_log(w), to_log(q), alpha);
}

double renyi_divergence(const Pmf& w, const Pmf& q, Order alpha) {
  return renyi_divergence(w.measure(), q.measure(), alpha);
}

double binary_renyi_entropy(double delta, Order alpha) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw DomainError("binary entropy argument must lie in [0,1]");
  switch (alpha.tag()) {
    case Order::Tag::Zero: {
      int support = (delta > 0.0) + (delta < 1.0);
      return std::log(static_cast<double>(support));
    }
    case Order::Tag::One:
      return -xlnx(delta) - xlnx(1.0 - delta);
    case Order::Tag::Infinity:
      return -std::log(std::max(delta, 1.0 - delta));
    case Order::Tag::FiniteGeneral: {
      const double a = alpha.value();
      double s = (delta > 0.0 ? std::pow(delta, a) : 0.0) +
                 (delta < 1.0 ? std::pow(1.0 - delta, a) : 0.0);
      return std::log(s) / (1.0 - a);
    }
  }
  throw DomainError("unreachable order tag");
}

}  // namespace renyi
