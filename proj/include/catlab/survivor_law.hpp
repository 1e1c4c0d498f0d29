#pragma once

#include "catlab/config.hpp"

namespace catlab {

// Per-colony growth rate.  Colonies gain one individual at a time at rate
// lambda while catastrophes strike each colony at rate 1, so lambda is also
// the birth/catastrophe rate ratio.
struct GrowthRate {
    double lambda;
};

// Throws DomainError unless 0 < lambda < infinity.
void validate(const GrowthRate& rate);

// Distribution of N, the number of individuals that survive one uniform
// catastrophe in a colony grown from a single founder at rate lambda:
//     P(N = n) = 1/(lambda+1) * q^n * Phi(q, 1, n+1),   q = lambda/(lambda+1),
//     E[s^N]   = ln(1 + lambda(1-s)) / (lambda(1-s)),
//     E[N]     = lambda / 2.
class SurvivorLaw {
public:
    // n_max < 0 selects the default truncation: the smallest n with
    // q^(n+1) < 1e-12 (the dominating-geometric tail bound).
    explicit SurvivorLaw(GrowthRate rate, int n_max = -1, SolverConfig cfg = {});

    double lambda() const { return rate_.lambda; }
    int n_max() const { return n_max_; }
    const SolverConfig& config() const { return cfg_; }

    // P(N = n); absolute error <= cfg.series_tol (inherited from lerch_phi).
    double pmf(int n) const;

    // E[s^N] for s in [0,1]; continuous extension 1 at s = 1.  For s within
    // 1e-8 of 1 the series ln(1+u)/u = 1 - u/2 + u^2/3 - ... in u =
    // lambda(1-s) is used to avoid 0/0 cancellation.
    double pgf(double s) const;

    // E[N] = lambda/2, exactly.
    double mean() const;

    // Upper bound on P(N > n_max): q^(n_max+1), since pmf(n) <= q^n.
    double tail_bound() const;

private:
    GrowthRate rate_;
    int n_max_;
    SolverConfig cfg_;
};

}  // namespace catlab
