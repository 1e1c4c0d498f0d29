#pragma once

#include <functional>

namespace catlab {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol,
// by recursive interval bisection with the standard 1/15 error estimate.
// The integrand must be finite at every point of [a, b]; removable
// singularities must be patched by the caller before integrating.
// Throws ConvergenceError if the recursion-depth limit is reached before the
// local tolerance is met.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double tol);

}  // namespace catlab
