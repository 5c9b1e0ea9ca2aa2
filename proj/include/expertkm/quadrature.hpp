#pragma once

#include <functional>

namespace expertkm {

// Adaptive Gauss-Kronrod (7-15) integration of a smooth integrand over a
// finite interval to the given absolute tolerance. Throws NumericError when
// refinement stalls.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

}  // namespace expertkm
