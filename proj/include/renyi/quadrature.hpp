#pragma once

#include <functional>

#include "renyi/errors.hpp"

namespace renyi {

struct IntegralResult {
  double value = 0.0;
  bool diverged = false;  // certified +infinity, not an overflow artifact
};

// Adaptive Simpson integration with Richardson error control on a finite
// interval of a bounded integrand. Throws QuadratureFailure when the
// refinement budget runs out without meeting the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol);

// Integration on (a, b] of an integrand that may blow up at either endpoint,
// listed in `singular_endpoints` (each must equal a or b). Panels shrink
// geometrically toward each singular endpoint; if the panel contributions
// stop decaying or the partial sums leave the representable range the
// integral is certified divergent instead of being reported as overflow.
IntegralResult integrate_with_endpoint_singularities(
    const std::function<double(double)>& f, double a, double b,
    const std::vector<double>& singular_endpoints, double abs_tol);

}  // namespace renyi
