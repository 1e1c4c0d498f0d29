#pragma once

#include <functional>

#include "catlab/config.hpp"

namespace catlab {

struct RootResult {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Finds a root of f in [lo, hi], where f(lo) and f(hi) must have opposite signs
// (or one endpoint is an exact root).  Bisection guarantees convergence; a
// secant step is tried first in each iteration and kept only if it stays
// inside the current bracket.  Iterates until the bracket width is below
// x_tol, then keeps narrowing while cheap progress is possible so the returned
// point also has a small residual; x_tol remains the guarantee.
// Throws BracketingError if f(lo) and f(hi) have the same (nonzero) sign.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double x_tol);

// Scans [from, to] in steps of `step`, evaluating f at from, from+step, ...,
// and returns through `lo`/`hi` the first consecutive pair with a sign change
// (f(lo) > 0 >= f(hi) or f(lo) < 0 <= f(hi)).  The final evaluation point is
// the largest from + k*step <= to + step/2; `to` itself is included when the
// grid lands on it.  Returns false if no sign change occurs.
bool scan_first_sign_change(const std::function<double(double)>& f,
                            double from, double to, double step,
                            double* lo, double* hi);

}  // namespace catlab
