#pragma once

#include <vector>

#include "catlab/config.hpp"
#include "catlab/extended.hpp"
#include "catlab/survivor_law.hpp"

namespace catlab {

// Parameters of the tree-dispersion model: colonies live on a rooted tree in
// which every vertex has d child vertices, and catastrophe survivors disperse
// uniformly over the d children of their colony's vertex.
struct TreeParams {
    int d;            // child-vertex count, >= 2
    GrowthRate rate;  // per-colony growth rate lambda
};

// Throws DomainError unless d >= 2 and the rate is valid.
void validate(const TreeParams& params);

// Colony offspring distribution for tree dispersion: probs[k] is the
// probability that a colony is replaced by exactly k colonies at its
// catastrophe (k = 0..d).
struct OffspringLaw {
    std::vector<double> probs;

    double mean() const;
    // pgf g(s) = sum_k probs[k] s^k.
    double pgf(double s) const;
};

// --- survival criteria and critical parameters -----------------------------

// True iff the tree process survives with positive probability:
//     d^2/(d-1) * ln((lambda+d)/d) < lambda   (strict).
bool tree_survival_condition(const TreeParams& params);

// The critical rate lambda_d: unique positive root of
//     d^2/(d-1) * ln((lambda+d)/d) = lambda,
// found by growing the bracket upper end geometrically until the sign flips,
// then bracketed root refinement to cfg.root_tol.  The process survives for
// lambda > lambda_d.
double critical_lambda(int d, const SolverConfig& cfg = {});

// --- offspring law and extinction probabilities ----------------------------

// Exact resummation of the offspring law:
//     p_0 = P(N = 0) = h(0),
//     p_k = C(d,k) * sum_{i=0}^{k} (-1)^i C(k,i) h((k-i)/d)   for 1 <= k <= d-1,
//     p_d = 1 - sum_{k<d} p_k,
// where h is the survivor-law pgf.  This equals the series
// sum_{n>=k} C(d,k) T(n,k)/d^n P(N=n) with T the surjection counts.
// Throws InvariantViolation if any p_k < -1e-9 (numerical pathology).
OffspringLaw offspring_law_tree(const TreeParams& params, const SolverConfig& cfg = {});

// Closed-form extinction probability for d in {2,3}.
//   d=2:  min{1, ln(lambda+1) / (lambda + ln(lambda+1) - 4 ln(1+lambda/2))}
//   d=3:  quadratic-root expression in a = p0, b, c; the radical sign is
//         resolved by evaluating both branches and keeping the one in [0,1]
//         whose offspring-pgf fixed-point residual is smallest, falling back
//         to min{1, .}.
// The returned value satisfies the fixed-point equation within 1e-8.
double psi_tree_closed(const TreeParams& params);

// Smallest root in [0,1] of g(s) = s for the tree offspring pgf g, located by
// scanning s = 0, scan_step, 2*scan_step, ..., 1 - scan_step for the first
// sign change of g(s) - s and bisecting it to root_tol.  Returns 1 when no
// sign change occurs below 1 - scan_step (subcritical or critical case);
// s = 1 itself is always a root and is never used as a scan point.
double psi_tree_general(const TreeParams& params, const SolverConfig& cfg = {});

// Mean extinction time for tree dispersion, d in {2,3}, defined for
// lambda <= lambda_d (strictly subcritical: closed form; within root_tol of
// lambda_d: INFINITE).  Throws DomainError for supercritical lambda.
//   d=2:  (1/beta) ln(alpha/(alpha-beta))        alpha = p0, beta = p2
//   d=3:  (1/r) ln((2 alpha - theta + r)/(2 alpha - theta - r)),
//         r = sqrt(4 alpha gamma + theta^2),     theta = p2+p3, gamma = p3
ExtendedTime mean_tau_tree(const TreeParams& params, const SolverConfig& cfg = {});

// Extinction probability of the unrestricted-dispersion model:
// 1 for lambda <= 2; otherwise the smallest root in [0,1) of
//     G(s) = ln(1 + lambda(1-s)) - lambda s (1-s),
// located by sign-change scan from s = 0 (G(0) = ln(1+lambda) > 0) plus
// bracketed refinement; s = 1 is always a root of G and is excluded by
// construction.
double psi_free(const GrowthRate& rate, const SolverConfig& cfg = {});

// Mean extinction time of the unrestricted-dispersion model, lambda <= 2:
//     (1/lambda) * integral_0^lambda x^2 / (lambda ln(1+x) - x(lambda-x)) dx
// via adaptive Simpson with the removable singularity at x = 0 patched by the
// analytic limit 1/(1 - lambda/2).  Within root_tol of lambda = 2: INFINITE
// (the integrand behaves like 3/(2x) there).  Throws DomainError for
// lambda > 2.
ExtendedTime mean_tau_free(const GrowthRate& rate, const SolverConfig& cfg = {});

// Closed-form extinction probabilities of the comparison models
// (unrestricted dispersion, survivor count drawn from the geometric/binomial
// reduction instead of the uniform one):
//     psi_G = min{ (1-p)(lambda+1) / (lambda (1 + lambda p)), 1 }
//     psi_B = min{ (1-p) / (lambda p), 1 }
double psi_geometric(const GrowthRate& rate, double p);
double psi_binomial(const GrowthRate& rate, double p);

// The crossover rate lambda_x(p) for p in (0, 1/3): the root of
// psi_free(lambda) = psi_binomial(lambda, p) on lambda > 2, located by
// sign-change scan plus bracketed refinement to root_tol.  Above the
// crossover, uniform catastrophes are the more severe of the two.
// Throws DomainError for p outside (0, 1/3); BracketingError if no crossing
// is found below cfg.lambda_max (reported, never fabricated).
double crossover_lambda(double p, const SolverConfig& cfg = {});

}  // namespace catlab
