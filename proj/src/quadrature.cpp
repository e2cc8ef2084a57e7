#include "renyi/quadrature.hpp"

#include <cmath>
#include <vector>

#include "renyi/numeric.hpp"

namespace renyi {

namespace {

constexpr int kMaxDepth = 48;
constexpr int kMaxPanels = 1060;  // halving further underflows the panel edge
constexpr double kDivergenceScale = 1e290;

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || depth >= kMaxDepth) return left + right + err;
  return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
    throw QuadratureFailure("integrand not finite on a panel without singularity annotation");
  const double whole = simpson(b - a, fa, fm, fb);
  return adapt(f, a, m, b, fa, fm, fb, whole, abs_tol, 0);
}

namespace {

// Integrates over (edge, far] where the integrand may blow up at `edge`.
// Panels halve geometrically toward the edge; the leftover sliver next to
// the edge is dropped once the geometric tail estimate falls below the
// tolerance. Sets `diverged` when the panel sums grow without decay or
// leave the representable range.
bool peel_singular_edge(const std::function<double(double)>& f, double edge, double far,
                        double abs_tol, IntegralResult& result) {
  const double span = std::abs(far - edge);
  const int dir = far > edge ? 1 : -1;
  double prev_panel = kInf;
  double last_tail_bound = kInf;
  int non_decaying = 0;
  double outer_frac = 1.0;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double inner_frac = 0.5 * outer_frac;
    const double inner = edge + dir * span * inner_frac;
    const double outer = edge + dir * span * outer_frac;
    if (inner == edge || inner == outer) {
      // Panel edges collapsed onto the singularity: the integrand cannot be
      // evaluated any closer in double precision (this happens at edges like
      // 1 whose ulp is ~1e-16, not at 0). Accept the geometric truncation
      // when its certified remainder is still small.
      if (last_tail_bound <= std::max(0.5 * abs_tol, 1e-6)) return true;
      throw QuadratureFailure(
          "singular endpoint exhausts floating-point resolution before converging");
    }
    const double lo = dir > 0 ? inner : outer;
    const double hi = dir > 0 ? outer : inner;
    double panel;
    try {
      panel = integrate_adaptive(f, lo, hi, abs_tol * std::max(inner_frac, 1e-3));
    } catch (const QuadratureFailure&) {
      // Overflowing values inside a shrinking panel: treat as divergence
      // evidence rather than a refinement failure.
      result.diverged = true;
      return false;
    }
    result.value += panel;
    if (!std::isfinite(result.value) || result.value > kDivergenceScale) {
      result.diverged = true;
      return false;
    }
    const double pan = std::abs(panel);
    const double ratio = prev_panel > 0.0 ? pan / prev_panel : 0.0;
    if (pan > abs_tol && ratio >= 0.9995) {
      if (++non_decaying >= 8) {
        result.diverged = true;
        return false;
      }
    } else {
      non_decaying = 0;
    }
    if (k > 0 && ratio < 0.9995) {
      const double r = std::min(std::max(ratio, 0.0), 0.999);
      last_tail_bound = pan * r / (1.0 - r);
      if (last_tail_bound + pan * 1e-3 < 0.5 * abs_tol) return true;
    }
    prev_panel = pan;
    outer_frac = inner_frac;
  }
  throw QuadratureFailure("refinement near singular endpoint did not converge or certify divergence");
}

}  // namespace

IntegralResult integrate_with_endpoint_singularities(
    const std::function<double(double)>& f, double a, double b,
    const std::vector<double>& singular_endpoints, double abs_tol) {
  IntegralResult result;
  if (!(b > a)) return result;
  bool sing_a = false, sing_b = false;
  for (double s : singular_endpoints) {
    if (s == a) sing_a = true;
    else if (s == b) sing_b = true;
    else throw QuadratureFailure("singularity annotations must sit at interval endpoints");
  }

  if (!sing_a && !sing_b) {
    result.value = integrate_adaptive(f, a, b, abs_tol);
    return result;
  }
  if (sing_a && sing_b) {
    const double mid = 0.5 * (a + b);
    if (!peel_singular_edge(f, a, mid, 0.5 * abs_tol, result)) return result;
    if (!peel_singular_edge(f, b, mid, 0.5 * abs_tol, result)) return result;
    return result;
  }
  if (sing_a) {
    peel_singular_edge(f, a, b, abs_tol, result);
    return result;
  }
  peel_singular_edge(f, b, a, abs_tol, result);
  return result;
}

}  // namespace renyi
