#pragma once

#include <cstdint>

#include "catlab/config.hpp"

namespace catlab {

// Arguments of the Lerch transcendent Phi(z, s, a) = sum_{j>=0} z^j / (j+a)^s.
// Restricted to |z| < 1, s >= 1, a > 0, which covers every use in this library
// (z = lambda/(lambda+1), s = 1).
struct LerchArgs {
    double z;
    double s = 1.0;
    double a;
};

// Evaluates Phi(z, s, a) by partial sums of the defining series, stopping when
// the geometric remainder bound
//     R_J <= |z|^{J+1} / ((J+1+a)^s (1 - |z|))
// drops below cfg.series_tol.
//
// Throws DomainError if |z| >= 1 - 1e-12 or a <= 0 or s < 1, and
// ConvergenceError if the bound cannot reach the tolerance within
// cfg.max_terms terms.
double lerch_phi(const LerchArgs& args, const SolverConfig& cfg = {});

// Number of surjections from an n-element set onto a k-element set,
//     T(n, k) = sum_{i=0}^{k} (-1)^i C(k,i) (k-i)^n,
// computed in exact integer arithmetic.  T(n,k) = 0 for k > n.
// Throws OverflowError if the exact value (or an intermediate term) exceeds
// the representable range; never wraps.
std::uint64_t surjection_count(unsigned n, unsigned k);

}  // namespace catlab
