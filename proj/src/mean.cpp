#include "renyi/mean.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/numeric.hpp"

namespace renyi {

namespace {

// log of the order-alpha mean density per output, -inf where it vanishes.
std::vector<double> log_mean_weights(const FiniteChannel& ch, const Prior& p, Order alpha) {
  const std::size_t m = ch.output_size();
  const auto& support = p.support();
  std::vector<double> lg(m, -kInf);

  if (alpha.is_zero()) {
    for (std::size_t y = 0; y < m; ++y) {
      double acc = 0.0;
      for (std::size_t w : support) {
        double v = ch.row(w)[y];
        if (v <= 0.0) {
          acc = -kInf;
          break;
        }
        acc += p[w] * std::log(v);
      }
      lg[y] = acc;
    }
    return lg;
  }
  if (alpha.is_infinity()) {
    for (std::size_t y = 0; y < m; ++y) {
      double best = 0.0;
      for (std::size_t w : support) best = std::max(best, ch.row(w)[y]);
      lg[y] = safe_log(best);
    }
    return lg;
  }
  const double a = alpha.value();
  for (std::size_t y = 0; y < m; ++y) {
    LogSumExpAccumulator acc;
    for (std::size_t w : support) {
      double v = ch.row(w)[y];
      if (v > 0.0) acc.add(std::log(p[w]) + a * std::log(v));
    }
    double ls = acc.value();
    lg[y] = ls == -kInf ? -kInf : ls / a;
  }
  return lg;
}

std::vector<double> exp_all(const std::vector<double>& lg) {
  std::vector<double> out(lg.size());
  for (std::size_t i = 0; i < lg.size(); ++i)
    out[i] = lg[i] == -kInf ? 0.0 : std::exp(lg[i]);
  return out;
}

double log_norm(const std::vector<double>& lg) { return log_sum_exp(lg); }

// Reachable prior mass per output: sum of prior masses over rows that can
// produce the output.
std::vector<double> reachable_mass(const FiniteChannel& ch, const Prior& p) {
  std::vector<double> theta(ch.output_size(), 0.0);
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    for (std::size_t w : p.support()) {
      if (ch.row(w)[y] > 0.0) theta[y] += p[w];
    }
  }
  return theta;
}

}  // namespace

MeanMeasure mean_measure(const FiniteChannel& ch, const Prior& p, Order alpha) {
  p.check_matches(ch);
  auto lg = log_mean_weights(ch, p, alpha);
  return MeanMeasure{alpha, FiniteMeasure(exp_all(lg)), p.support().size()};
}

DensityPosterior mean_density_and_posterior(const FiniteChannel& ch, const Prior& p,
                                            Order alpha) {
  p.check_matches(ch);
  if (!alpha.is_finite_positive())
    throw OrderOutOfRange("density and posterior need a finite positive order");
  const double a = alpha.value();
  const std::size_t m = ch.output_size();
  const std::size_t n = ch.input_size();

  auto lg_a = log_mean_weights(ch, p, alpha);
  auto lg_1 = log_mean_weights(ch, p, Order::one());

  DensityPosterior out{std::vector<double>(m, 0.0),
                       PosteriorMatrix{alpha, std::vector<bool>(m, false),
                                       std::vector<std::vector<double>>(
                                           m, std::vector<double>(n, 0.0))}};

  for (std::size_t y = 0; y < m; ++y) {
    if (lg_1[y] == -kInf) continue;
    out.posterior.supported[y] = true;
    out.density[y] = std::exp(lg_a[y] - lg_1[y]);
    for (std::size_t w : p.support()) {
      double v = ch.row(w)[y];
      if (v > 0.0)
        out.posterior.entries[y][w] =
            std::exp(std::log(p[w]) + a * (std::log(v) - lg_a[y]));
    }
  }
  return out;
}

double renyi_information(const FiniteChannel& ch, const Prior& p, Order alpha) {
  p.check_matches(ch);
  switch (alpha.tag()) {
    case Order::Tag::Zero: {
      auto theta = reachable_mass(ch, p);
      auto lg_1 = log_mean_weights(ch, p, Order::one());
      double best = 0.0;
      for (std::size_t y = 0; y < ch.output_size(); ++y) {
        if (lg_1[y] > -kInf) best = std::max(best, theta[y]);
      }
      return std::max(-std::log(best), 0.0);
    }
    case Order::Tag::One: {
      // sum_w P(w) D_1(W_w || m_1); evaluated jointly for stability.
      auto lg_1 = log_mean_weights(ch, p, Order::one());
      double info = 0.0;
      for (std::size_t w : p.support()) {
        for (std::size_t y = 0; y < ch.output_size(); ++y) {
          double v = ch.row(w)[y];
          if (v > 0.0) info += p[w] * v * (std::log(v) - lg_1[y]);
        }
      }
      return std::max(info, 0.0);
    }
    case Order::Tag::Infinity:
      return std::max(log_norm(log_mean_weights(ch, p, alpha)), 0.0);
    case Order::Tag::FiniteGeneral: {
      const double a = alpha.value();
      double ln_norm = log_norm(log_mean_weights(ch, p, alpha));
      return std::max(a / (a - 1.0) * ln_norm, 0.0);
    }
  }
  throw DomainError("unreachable order tag");
}

double renyi_information_derivative(const FiniteChannel& ch, const Prior& p, Order alpha) {
  p.check_matches(ch);
  if (!alpha.is_finite_positive())
    throw OrderOutOfRange("information derivative needs a finite positive order");
  auto dp = mean_density_and_posterior(ch, p, alpha);
  auto mean_a = mean_measure(ch, p, alpha);
  auto mean_1 = mean_measure(ch, p, Order::one());
  const double norm_a = mean_a.norm();

  if (alpha.is_one()) {
    // Variance of log(T_1(w|y)/P(w)) under the joint m_1(y) T_1(w|y).
    double info = renyi_information(ch, p, alpha);
    double second = 0.0;
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      if (!dp.posterior.supported[y]) continue;
      for (std::size_t w : p.support()) {
        double t = dp.posterior.entries[y][w];
        if (t > 0.0) {
          double l = std::log(t / p[w]);
          second += mean_1.measure[y] * t * l * l;
        }
      }
    }
    return 0.5 * std::max(second - info * info, 0.0);
  }

  const double a = alpha.value();
  // [ E_{q_a}( KL(T_a(.|y) || P) ) - I_a ] / (a (a-1))
  double avg_kl = 0.0;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    if (!dp.posterior.supported[y]) continue;
    double kl = 0.0;
    for (std::size_t w : p.support()) {
      double t = dp.posterior.entries[y][w];
      if (t > 0.0) kl += t * std::log(t / p[w]);
    }
    avg_kl += (mean_a.measure[y] / norm_a) * kl;
  }
  double info = renyi_information(ch, p, alpha);
  return (avg_kl - info) / (a * (a - 1.0));
}

double gallager_e0(double rho, const FiniteChannel& ch, const Prior& p) {
  p.check_matches(ch);
  if (!(rho > -1.0)) throw RhoOutOfRange("Gallager exponent parameter must exceed -1");
  const double inner_exp = 1.0 / (1.0 + rho);
  LogSumExpAccumulator outer;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    LogSumExpAccumulator inner;
    for (std::size_t w : p.support()) {
      double v = ch.row(w)[y];
      if (v > 0.0) inner.add(std::log(p[w]) + inner_exp * std::log(v));
    }
    double li = inner.value();
    if (li > -kInf) outer.add((1.0 + rho) * li);
  }
  return -outer.value();
}

Pmf renyi_mean(const FiniteChannel& ch, const Prior& p, Order alpha) {
  p.check_matches(ch);
  if (!alpha.is_zero()) {
    auto lg = log_mean_weights(ch, p, alpha);
    double ln = log_norm(lg);
    std::vector<double> q(lg.size());
    double total = 0.0;
    for (std::size_t y = 0; y < lg.size(); ++y) {
      q[y] = lg[y] == -kInf ? 0.0 : std::exp(lg[y] - ln);
      total += q[y];
    }
    for (auto& x : q) x /= total;
    return Pmf::validated(std::move(q));
  }

  // Order zero: restrict to the outputs whose reachable prior mass attains
  // its maximum (relative tolerance 1e-12), weight the order-1 mean there by
  // exp(-D_1(T_0 || T_1)) and normalize.
  auto theta = reachable_mass(ch, p);
  auto lg_1 = log_mean_weights(ch, p, Order::one());
  double theta_bar = 0.0;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    if (lg_1[y] > -kInf) theta_bar = std::max(theta_bar, theta[y]);
  }
  std::vector<double> q(ch.output_size(), 0.0);
  double total = 0.0;
  for (std::size_t y = 0; y < ch.output_size(); ++y) {
    if (lg_1[y] == -kInf || theta[y] < theta_bar * (1.0 - 1e-12)) continue;
    double kl = 0.0;  // D_1(T_0(.|y) || T_1(.|y))
    for (std::size_t w : p.support()) {
      double v = ch.row(w)[y];
      if (v <= 0.0) continue;
      double t0 = p[w] / theta[y];
      double t1 = std::exp(std::log(p[w]) + std::log(v) - lg_1[y]);
      kl += t0 * std::log(t0 / t1);
    }
    q[y] = std::exp(lg_1[y] - kl);
    total += q[y];
  }
  for (auto& x : q) x /= total;
  return Pmf::validated(std::move(q));
}

double joint_divergence(const FiniteChannel& ch, const Prior& p, const FiniteMeasure& q,
                        Order alpha) {
  p.check_matches(ch);
  if (q.size() != ch.output_size())
    throw AlphabetMismatch("reference measure must live on the output alphabet");
  if (q.is_zero()) throw ZeroMeasure("reference measure must be non-zero");

  switch (alpha.tag()) {
    case Order::Tag::Zero: {
      double mass = 0.0;
      for (std::size_t w : p.support()) {
        double qw = 0.0;
        for (std::size_t y = 0; y < q.size(); ++y) {
          if (ch.row(w)[y] > 0.0) qw += q[y];
        }
        mass += p[w] * qw;
      }
      return mass > 0.0 ? -std::log(mass) : kInf;
    }
    case Order::Tag::One: {
      double d = 0.0;
      for (std::size_t w : p.support()) {
        double dw = renyi_divergence(ch.row(w).measure(), q, alpha);
        if (dw == kInf) return kInf;
        d += p[w] * dw;
      }
      return d;
    }
    case Order::Tag::Infinity: {
      double worst = 0.0;
      for (std::size_t w : p.support())
        worst = std::max(worst, renyi_divergence(ch.row(w).measure(), q, alpha));
      return worst;
    }
    case Order::Tag::FiniteGeneral: {
      const double a = alpha.value();
      LogSumExpAccumulator acc;
      for (std::size_t w : p.support()) {
        double lp = std::log(p[w]);
        for (std::size_t y = 0; y < q.size(); ++y) {
          double v = ch.row(w)[y];
          if (v <= 0.0) continue;
          if (q[y] <= 0.0) {
            if (a > 1.0) return kInf;
            continue;
          }
          acc.add(lp + a * std::log(v) + (1.0 - a) * std::log(q[y]));
        }
      }
      double ls = acc.value();
      if (ls == -kInf) return kInf;
      return ls / (a - 1.0);
    }
  }
  throw DomainError("unreachable order tag");
}

}  // namespace renyi
