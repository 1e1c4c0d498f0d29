// Tests for the Lerch transcendent evaluator and the exact surjection counts.
//
// Reference values come from three independent sources, each computed inside
// this file or fixed in closed form:
//   * closed forms of Phi(z,1,a) for small integer a (log reductions),
//     evaluated in 128-bit precision to avoid the cancellation that makes the
//     double-precision closed form lose ~7 digits at small z / large a;
//   * the contiguous-parameter recurrence Phi(z,s,a) = z Phi(z,s,a+1) + a^-s,
//     which is well conditioned for z in (0,1);
//   * for surjections, a direct dynamic-programming recurrence and an
//     exhaustive enumeration of all k^n functions for small n.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <quadmath.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "catlab/errors.hpp"
#include "catlab/special_functions.hpp"

using catlab::ConvergenceError;
using catlab::DomainError;
using catlab::lerch_phi;
using catlab::LerchArgs;
using catlab::OverflowError;
using catlab::surjection_count;

namespace {

// Phi(z,1,a) = -(ln(1-z) + sum_{j=1}^{a-1} z^j/j) / z^a for integer a >= 1,
// evaluated in __float128: the subtraction cancels catastrophically in double
// once a is large and z is small, so the reference must carry extra digits.
double lerch_closed_reduction(double z, int a) {
    const __float128 zq = z;
    __float128 partial = 0;
    __float128 zpow = 1;
    for (int j = 1; j < a; ++j) {
        zpow *= zq;
        partial += zpow / j;
    }
    const __float128 za = zpow * zq;
    return static_cast<double>(-(logq(__float128(1) - zq) + partial) / za);
}

// T(n,k) via the recurrence T(n,k) = k (T(n-1,k) + T(n-1,k-1)), exact in
// uint64 for the ranges used here (max k^n = 15^15 < 2^63).
std::uint64_t surjection_dp(unsigned n, unsigned k) {
    std::vector<std::vector<std::uint64_t>> t(n + 1,
                                              std::vector<std::uint64_t>(k + 1, 0));
    t[0][0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= k; ++j)
            t[i][j] = j * (t[i - 1][j] + t[i - 1][j - 1]);
    return t[n][k];
}

// Exhaustive count of surjections among all k^n functions [n] -> [k].
std::uint64_t surjection_brute(unsigned n, unsigned k) {
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    std::vector<unsigned> f(n, 0);
    std::uint64_t count = 0;
    while (true) {
        std::uint64_t hit = 0;
        for (unsigned v : f) hit |= std::uint64_t(1) << v;
        if (hit == (std::uint64_t(1) << k) - 1) ++count;
        unsigned pos = 0;
        while (pos < n && ++f[pos] == k) f[pos++] = 0;
        if (pos == n) break;
    }
    return count;
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
    std::uint64_t c = 1;
    for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

TEST_CASE("lerch: closed-form values at s=1") {
    // Phi(1/2,1,1) = 2 ln 2, Phi(1/2,1,2) = 4 ln 2 - 2 (log reductions).
    CHECK(std::fabs(lerch_phi({0.5, 1.0, 1.0}) - 2.0 * std::log(2.0)) < 2e-12);
    CHECK(std::fabs(lerch_phi({0.5, 1.0, 2.0}) - (4.0 * std::log(2.0) - 2.0)) < 2e-12);
    // z = 0: only the j = 0 term survives, Phi(0,1,a) = 1/a.
    CHECK(lerch_phi({0.0, 1.0, 3.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Negative z: Phi(-1/2,1,1) = -ln(1 - z)/z = 2 ln(3/2).
    CHECK(std::fabs(lerch_phi({-0.5, 1.0, 1.0}) - 2.0 * std::log(1.5)) < 2e-12);
}

TEST_CASE("lerch: agrees with 128-bit closed reduction over a grid") {
    for (const double z : {0.1, 0.5, 0.9}) {
        for (int a = 1; a <= 10; ++a) {
            const double series = lerch_phi({z, 1.0, double(a)});
            const double closed = lerch_closed_reduction(z, a);
            CAPTURE(z);
            CAPTURE(a);
            CHECK(std::fabs(series - closed) < 1e-11);
        }
    }
}

TEST_CASE("lerch: contiguous recurrence Phi(z,s,a) = z Phi(z,s,a+1) + a^-s") {
    for (const double z : {0.1, 0.5, 0.9, 6.0 / 7.0}) {
        for (const double a : {1.0, 2.5, 7.0, 30.7}) {
            const double lhs = lerch_phi({z, 1.0, a});
            const double rhs = z * lerch_phi({z, 1.0, a + 1.0}) + 1.0 / a;
            CAPTURE(z);
            CAPTURE(a);
            CHECK(std::fabs(lhs - rhs) < 5e-12);
        }
    }
}

TEST_CASE("lerch: domain and convergence errors") {
    CHECK_THROWS_AS(lerch_phi({1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(lerch_phi({1.0 - 1e-13, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(lerch_phi({-1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(lerch_phi({0.5, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(lerch_phi({0.5, 1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(lerch_phi({0.5, 0.5, 1.0}), DomainError);
    // Admissible z this close to 1 needs ~1e12 terms: must report, not spin.
    CHECK_THROWS_AS(lerch_phi({1.0 - 1e-11, 1.0, 1.0}), ConvergenceError);
}

TEST_CASE("surjections: fixed small values") {
    CHECK(surjection_count(0, 0) == 1);
    CHECK(surjection_count(5, 0) == 0);
    CHECK(surjection_count(0, 3) == 0);
    CHECK(surjection_count(5, 1) == 1);
    CHECK(surjection_count(3, 2) == 6);
    CHECK(surjection_count(4, 2) == 14);
    CHECK(surjection_count(2, 3) == 0);   // k > n: no surjection
    CHECK(surjection_count(4, 4) == 24);  // T(n,n) = n!
}

TEST_CASE("surjections: match the dynamic-programming recurrence up to n=15") {
    for (unsigned n = 0; n <= 15; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(surjection_count(n, k) == surjection_dp(n, k));
        }
}

TEST_CASE("surjections: match exhaustive enumeration up to n=7") {
    for (unsigned n = 1; n <= 7; ++n)
        for (unsigned k = 1; k <= n + 1; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(surjection_count(n, k) == surjection_brute(n, k));
        }
}

TEST_CASE("surjections: binomial aggregation sum_k C(d,k) T(n,k) = d^n") {
    for (unsigned d = 2; d <= 6; ++d)
        for (unsigned n = 1; n <= 12; ++n) {
            std::uint64_t sum = 0;
            for (unsigned k = 1; k <= std::min(d, n); ++k)
                sum += binomial_u64(d, k) * surjection_count(n, k);
            std::uint64_t dn = 1;
            for (unsigned i = 0; i < n; ++i) dn *= d;
            CAPTURE(d);
            CAPTURE(n);
            CHECK(sum == dn);
        }
}

TEST_CASE("surjections: overflow is reported, never wrapped") {
    // T(20,20) = 20! is the largest factorial below 2^64.
    CHECK(surjection_count(20, 20) == 2432902008176640000ull);
    CHECK_THROWS_AS(surjection_count(21, 21), OverflowError);
}
