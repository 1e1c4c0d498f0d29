// Tests for the bracketed root finder, the sign-change scanner, and the
// adaptive Simpson integrator, against analytically known roots and integrals.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "catlab/errors.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/rootfind.hpp"

using catlab::BracketingError;
using catlab::find_root_bracketed;
using catlab::integrate_adaptive_simpson;
using catlab::scan_first_sign_change;

TEST_CASE("root finder: known roots to tight tolerance") {
    const auto r1 = find_root_bracketed([](double x) { return x * x - 2.0; },
                                        0.0, 2.0, 1e-12);
    CHECK(r1.converged);
    CHECK(std::fabs(r1.x - std::sqrt(2.0)) < 1e-12);
    CHECK(r1.iterations <= 220);

    const auto r2 = find_root_bracketed([](double x) { return std::cos(x); },
                                        1.0, 2.0, 1e-12);
    CHECK(std::fabs(r2.x - std::acos(0.0)) < 1e-12);

    // Residual quality: for a well-scaled smooth f the returned point should
    // be essentially a machine root, not just inside the x-tolerance.
    CHECK(std::fabs(r1.x * r1.x - 2.0) < 1e-13);
}

TEST_CASE("root finder: exact roots at bracket endpoints") {
    const auto lo = find_root_bracketed([](double x) { return x; }, 0.0, 1.0, 1e-10);
    CHECK(lo.x == 0.0);
    CHECK(lo.converged);
    const auto hi = find_root_bracketed([](double x) { return x - 1.0; }, 0.0, 1.0, 1e-10);
    CHECK(hi.x == 1.0);
}

TEST_CASE("root finder: steep and flat functions") {
    // Near-step function: secant overshoots wildly, bisection must rescue.
    const auto steep = find_root_bracketed(
        [](double x) { return std::tanh(50.0 * (x - 0.3)); }, 0.0, 1.0, 1e-12);
    CHECK(std::fabs(steep.x - 0.3) < 1e-12);

    // Triple root: derivative vanishes at the root; x-bisection still pins it.
    const auto flat = find_root_bracketed(
        [](double x) { return (x - 0.7) * (x - 0.7) * (x - 0.7); }, 0.0, 1.0, 1e-12);
    CHECK(std::fabs(flat.x - 0.7) < 1e-12);
}

TEST_CASE("root finder: same-sign bracket is rejected") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; },
                                        0.0, 1.0, 1e-10),
                    BracketingError);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return -(x * x + 1.0); },
                                        -1.0, 1.0, 1e-10),
                    BracketingError);
}

TEST_CASE("sign-change scan: finds the first bracket") {
    double lo = -1.0, hi = -1.0;
    CHECK(scan_first_sign_change([](double x) { return x - 0.3705; },
                                 0.0, 1.0, 1e-3, &lo, &hi));
    CHECK(lo <= 0.3705);
    CHECK(hi >= 0.3705);
    CHECK(hi - lo <= 1e-3 + 1e-12);

    // Two crossings of sin(2 pi x) in [0.1, 1.4]; the first (x = 0.5) wins.
    CHECK(scan_first_sign_change(
        [](double x) { return std::sin(2.0 * M_PI * x); }, 0.1, 1.4, 0.01, &lo, &hi));
    CHECK(lo <= 0.5 + 1e-12);
    CHECK(hi >= 0.5 - 1e-12);
    CHECK(hi < 0.6);
}

TEST_CASE("sign-change scan: exact zero at a grid point counts") {
    double lo = -1.0, hi = -1.0;
    CHECK(scan_first_sign_change([](double x) { return x - 0.5; },
                                 0.0, 1.0, 0.25, &lo, &hi));
    CHECK(lo == 0.25);
    CHECK(hi == 0.5);
}

TEST_CASE("sign-change scan: respects the upper end") {
    double lo = 0.0, hi = 0.0;
    // Crossing at 0.95 lies beyond the scan range [0, 0.9].
    CHECK_FALSE(scan_first_sign_change([](double x) { return x - 0.95; },
                                       0.0, 0.9, 0.1, &lo, &hi));
    CHECK_FALSE(scan_first_sign_change([](double x) { return 1.0 + x * x; },
                                       0.0, 1.0, 0.1, &lo, &hi));
}

TEST_CASE("quadrature: polynomials and classic integrals") {
    CHECK(std::fabs(integrate_adaptive_simpson([](double x) { return x * x; },
                                               0.0, 1.0, 1e-10) -
                    1.0 / 3.0) < 1e-12);
    CHECK(std::fabs(integrate_adaptive_simpson([](double x) { return std::sin(x); },
                                               0.0, M_PI, 1e-9) -
                    2.0) < 1e-8);
    CHECK(std::fabs(integrate_adaptive_simpson(
                        [](double x) { return 4.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-10) -
                    M_PI) < 1e-9);
    CHECK(integrate_adaptive_simpson([](double x) { return x; }, 0.5, 0.5, 1e-10) ==
          0.0);
}

TEST_CASE("quadrature: patched removable singularity") {
    // integral_0^1 sin(x)/x dx = 1 - 1/18 + 1/600 - 1/35280 + ... (alternating
    // series, summed here to below 1e-15) with the x = 0 value patched to 1.
    double reference = 0.0, factorial = 1.0;
    for (int k = 0; k <= 8; ++k) {
        // term_k = (-1)^k / ((2k+1) (2k+1)!)
        if (k > 0) factorial *= (2.0 * k) * (2.0 * k + 1.0);
        reference += (k % 2 == 0 ? 1.0 : -1.0) / ((2.0 * k + 1.0) * factorial);
    }
    const double value = integrate_adaptive_simpson(
        [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, 0.0, 1.0, 1e-10);
    CHECK(std::fabs(value - reference) < 1e-9);
}

TEST_CASE("quadrature: narrow peak is resolved adaptively") {
    // integral_0^1 exp(-1000 (x-1/2)^2) dx = sqrt(pi/1000) up to tails < 1e-100.
    const double value = integrate_adaptive_simpson(
        [](double x) { return std::exp(-1000.0 * (x - 0.5) * (x - 0.5)); },
        0.0, 1.0, 1e-10);
    CHECK(std::fabs(value - std::sqrt(M_PI / 1000.0)) < 1e-9);
}
