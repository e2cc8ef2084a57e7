#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace renyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(sum exp(a_i)) with the usual max shift; empty input gives -inf.
// Terms equal to -inf are skipped, so underflowed masses drop out cleanly.
inline double log_sum_exp(std::span<const double> args) {
  double max_arg = -kInf;
  for (double a : args) max_arg = std::max(max_arg, a);
  if (max_arg == -kInf) return -kInf;
  if (max_arg == kInf) return kInf;
  double sum = 0.0;
  for (double a : args) {
    if (a != -kInf) sum += std::exp(a - max_arg);
  }
  return max_arg + std::log(sum);
}

inline double log_sum_exp(const std::vector<double>& args) {
  return log_sum_exp(std::span<const double>(args));
}

// Streaming two-pass-free accumulator for log-sum-exp.
class LogSumExpAccumulator {
 public:
  void add(double a) {
    if (a == -kInf) return;
    if (a <= shift_) {
      sum_ += std::exp(a - shift_);
    } else {
      sum_ = sum_ * std::exp(shift_ - a) + 1.0;
      shift_ = a;
    }
  }
  double value() const {
    if (sum_ == 0.0) return -kInf;
    return shift_ + std::log(sum_);
  }

 private:
  double shift_ = -kInf;
  double sum_ = 0.0;
};

// x*log(x) with the 0*log(0) = 0 convention.
inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// x*log(x/y) with 0*log(0/y) = 0; +inf when x > 0 and y = 0.
inline double xlny_ratio(double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return kInf;
  return x * std::log(x / y);
}

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

inline double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace renyi
