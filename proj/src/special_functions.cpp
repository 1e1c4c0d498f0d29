#include "catlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "catlab/errors.hpp"

namespace catlab {

double lerch_phi(const LerchArgs& args, const SolverConfig& cfg) {
    const double z = args.z, s = args.s, a = args.a;
    // z is capped strictly below 1; beyond the cap we refuse rather than switch
    // representations, since z = lambda/(lambda+1) stays well inside for any
    // realistic lambda.
    if (!(std::abs(z) < 1.0 - 1e-12))
        throw DomainError("lerch_phi: require |z| < 1 - 1e-12, got z=" + std::to_string(z));
    if (!(a > 0.0))
        throw DomainError("lerch_phi: require a > 0, got a=" + std::to_string(a));
    if (!(s >= 1.0))
        throw DomainError("lerch_phi: require s >= 1, got s=" + std::to_string(s));

    const double az = std::abs(z);
    double sum = 0.0;
    double zpow = 1.0;  // z^j
    for (std::int64_t j = 0; j < cfg.max_terms; ++j) {
        sum += zpow / std::pow(j + a, s);
        zpow *= z;
        // Remainder after the terms 0..j: R <= |z|^{j+1} / ((j+1+a)^s (1-|z|)).
        const double bound = std::pow(az, double(j + 1)) /
                             (std::pow(j + 1 + a, s) * (1.0 - az));
        if (bound <= cfg.series_tol) return sum;
    }
    throw ConvergenceError("lerch_phi: tail bound did not reach series_tol within max_terms");
}

namespace {

// C(k, i) for k <= 64 fits comfortably; overflow is checked anyway.
std::uint64_t checked_binomial(unsigned k, unsigned i) {
    if (i > k) return 0;
    if (i > k - i) i = k - i;
    unsigned __int128 acc = 1;
    for (unsigned j = 1; j <= i; ++j) {
        acc = acc * (k - i + j) / j;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("surjection_count: binomial coefficient overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

unsigned __int128 checked_pow(unsigned base, unsigned exp) {
    unsigned __int128 acc = 1;
    for (unsigned j = 0; j < exp; ++j) {
        const unsigned __int128 prev = acc;
        acc *= base;
        if (base != 0 && acc / base != prev)
            throw OverflowError("surjection_count: power overflow");
    }
    return acc;
}

}  // namespace

std::uint64_t surjection_count(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k == 0) return n == 0 ? 1 : 0;
    // Alternating sum, accumulated as signed 128-bit with explicit range checks:
    // partial sums may exceed the final value, so every step is checked.
    __int128 acc = 0;
    const __int128 lo = 0;  // T(n,k) >= 0 and partial sums stay modest for valid input
    const __int128 hi = static_cast<__int128>(1) << 126;
    for (unsigned i = 0; i <= k; ++i) {
        const unsigned __int128 term128 =
            static_cast<unsigned __int128>(checked_binomial(k, i)) * checked_pow(k - i, n);
        if (term128 > static_cast<unsigned __int128>(hi))
            throw OverflowError("surjection_count: term overflow");
        const __int128 term = static_cast<__int128>(term128);
        acc += (i % 2 == 0) ? term : -term;
        if (acc > hi || acc < -hi)
            throw OverflowError("surjection_count: accumulator overflow");
    }
    if (acc < lo)
        throw OverflowError("surjection_count: negative result (overflow or invalid input)");
    if (acc > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max()))
        throw OverflowError("surjection_count: result exceeds 64-bit range");
    return static_cast<std::uint64_t>(acc);
}

}  // namespace catlab
