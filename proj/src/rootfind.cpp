#include "catlab/rootfind.hpp"

#include <cmath>
#include <string>

#include "catlab/errors.hpp"

namespace catlab {

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double x_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketingError("find_root_bracketed: no sign change on [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");

    RootResult res;
    // Alternate secant (fast when smooth) with bisection (guarantees the
    // bracket halves at least every other iteration).  Narrowing continues
    // below x_tol toward machine width so the residual at the returned point
    // is as small as the function's conditioning allows; x_tol remains the
    // guarantee for `converged`.
    for (int it = 0; it < 220; ++it) {
        res.iterations = it + 1;
        double mid = 0.5 * (lo + hi);
        if (it % 2 == 0) {
            const double denom = fhi - flo;
            if (denom != 0.0) {
                const double sec = lo - flo * (hi - lo) / denom;
                if (sec > lo && sec < hi) mid = sec;
            }
        }
        if (!(mid > lo && mid < hi)) break;  // bracket is at machine width
        const double fmid = f(mid);
        if (fmid == 0.0) {
            res.x = mid;
            res.converged = true;
            return res;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        if (hi - lo <= x_tol) res.converged = true;
    }
    if (hi - lo <= x_tol) res.converged = true;
    // Return the endpoint with the smaller residual.
    res.x = (std::abs(flo) <= std::abs(fhi)) ? lo : hi;
    return res;
}

bool scan_first_sign_change(const std::function<double(double)>& f,
                            double from, double to, double step,
                            double* lo, double* hi) {
    double x = from;
    double fx = f(x);
    for (long k = 1;; ++k) {
        const double x2 = from + double(k) * step;
        if (x2 > to + step * 0.5) return false;
        const double fx2 = f(x2);
        const bool crossed = (fx > 0.0 && fx2 <= 0.0) || (fx < 0.0 && fx2 >= 0.0);
        if (crossed || fx == 0.0) {
            *lo = x;
            *hi = x2;
            return true;
        }
        x = x2;
        fx = fx2;
    }
}

}  // namespace catlab
