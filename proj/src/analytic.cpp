#include "catlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "catlab/errors.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/rootfind.hpp"

namespace catlab {

void validate(const TreeParams& params) {
    if (params.d < 2)
        throw DomainError("TreeParams: require d >= 2, got d=" + std::to_string(params.d));
    validate(params.rate);
}

double OffspringLaw::mean() const {
    double m = 0.0;
    for (std::size_t k = 1; k < probs.size(); ++k) m += double(k) * probs[k];
    return m;
}

double OffspringLaw::pgf(double s) const {
    // Horner evaluation of sum_k p_k s^k.
    double acc = 0.0;
    for (std::size_t k = probs.size(); k-- > 0;) acc = acc * s + probs[k];
    return acc;
}

// --------------------------------------------------------------- criticality

namespace {

double survival_gap(int d, double lambda) {
    // lambda - d^2/(d-1) * ln((lambda+d)/d); positive iff the process survives.
    return lambda - double(d) * d / (d - 1.0) * std::log1p(lambda / d);
}

}  // namespace

bool tree_survival_condition(const TreeParams& params) {
    validate(params);
    return survival_gap(params.d, params.rate.lambda) > 0.0;
}

double critical_lambda(int d, const SolverConfig& cfg) {
    if (d < 2) throw DomainError("critical_lambda: require d >= 2");
    // survival_gap is negative between its roots 0 and lambda_d, with minimum
    // at d/(d-1) < lambda_d.  Bracket [d/(d-1), hi] by growing hi until the
    // gap turns positive.
    const double lo = double(d) / (d - 1.0);
    double hi = 8.0;
    while (survival_gap(d, hi) <= 0.0) {
        hi *= 2.0;
        if (hi > cfg.lambda_max)
            throw BracketingError("critical_lambda: no sign change below lambda_max");
    }
    const auto r = find_root_bracketed(
        [d](double lam) { return survival_gap(d, lam); }, lo, hi, cfg.root_tol);
    if (!r.converged)
        throw ConvergenceError("critical_lambda: root refinement did not converge");
    return r.x;
}

// ------------------------------------------------------------- offspring law

OffspringLaw offspring_law_tree(const TreeParams& params, const SolverConfig& cfg) {
    validate(params);
    const int d = params.d;
    SurvivorLaw law(params.rate, -1, cfg);

    // h(x) = survivor pgf; h(0) = P(N=0).
    auto h = [&law](double x) { return law.pgf(x); };

    OffspringLaw out;
    out.probs.assign(d + 1, 0.0);
    out.probs[0] = h(0.0);
    double binom_dk = 1.0;  // C(d, k)
    for (int k = 1; k <= d - 1; ++k) {
        binom_dk *= double(d - k + 1) / k;
        // Inclusion-exclusion over occupied-subset sizes, with Neumaier
        // compensation since the terms alternate in sign.
        double sum = 0.0, comp = 0.0;
        double binom_ki = 1.0;  // C(k, i)
        for (int i = 0; i <= k; ++i) {
            if (i > 0) binom_ki *= double(k - i + 1) / i;
            const double term = (i % 2 == 0 ? 1.0 : -1.0) * binom_ki * h(double(k - i) / d);
            const double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        out.probs[k] = binom_dk * (sum + comp);
    }
    double rest = 0.0;
    for (int k = 0; k <= d - 1; ++k) rest += out.probs[k];
    out.probs[d] = 1.0 - rest;

    for (int k = 0; k <= d; ++k) {
        if (out.probs[k] < -1e-9)
            throw InvariantViolation("offspring_law_tree: p_" + std::to_string(k) +
                                     " = " + std::to_string(out.probs[k]) + " < -1e-9");
    }
    return out;
}

// ------------------------------------------------------- tree extinction psi

namespace {

// Smallest fixed point of a pgf g on [0,1): scan for the first sign change of
// g(s) - s strictly below 1 (s = 1 is always a root and is never evaluated),
// then refine.  Returns 1 when no crossing exists below 1 - scan_step.
double smallest_pgf_fixed_point(const std::function<double(double)>& g,
                                const SolverConfig& cfg) {
    auto f = [&g](double s) { return g(s) - s; };
    double lo = 0.0, hi = 0.0;
    if (!scan_first_sign_change(f, 0.0, 1.0 - cfg.scan_step, cfg.scan_step, &lo, &hi))
        return 1.0;
    const auto r = find_root_bracketed(f, lo, hi, cfg.root_tol);
    if (!r.converged)
        throw ConvergenceError("smallest_pgf_fixed_point: refinement did not converge");
    return r.x;
}

}  // namespace

double psi_tree_general(const TreeParams& params, const SolverConfig& cfg) {
    const OffspringLaw law = offspring_law_tree(params, cfg);
    return smallest_pgf_fixed_point([&law](double s) { return law.pgf(s); }, cfg);
}

double psi_tree_closed(const TreeParams& params) {
    validate(params);
    const double lam = params.rate.lambda;
    if (params.d == 2) {
        const double denom = lam + std::log1p(lam) - 4.0 * std::log1p(lam / 2.0);
        const double val = std::log1p(lam) / denom;
        return std::min(1.0, val);
    }
    if (params.d != 3)
        throw DomainError("psi_tree_closed: closed forms exist for d in {2,3} only");

    // Quadratic-root form with
    //   a = ln(1+lambda)/lambda, b = ln(1+2 lambda/3)/(2 lambda),
    //   c = ln(1+lambda/3)/lambda.
    // The radical sign is ambiguous at face value; evaluate both branches and
    // keep the in-[0,1] branch with the smaller offspring-pgf fixed-point
    // residual, falling back to the min{1,.} clamp.
    const double a = std::log1p(lam) / lam;
    const double b = std::log1p(2.0 * lam / 3.0) / (2.0 * lam);
    const double c = std::log1p(lam / 3.0) / lam;
    const double disc = (1.0 - 9.0 * b) * (1.0 - 9.0 * b) + 4.0 * a * (2.0 - 9.0 * c);
    const double denom = 2.0 * (a - 9.0 * b + 9.0 * c - 1.0);
    if (disc < 0.0 || denom == 0.0) return 1.0;
    const double root = std::sqrt(disc);
    const OffspringLaw off = offspring_law_tree(params);
    // The extinction probability is the smallest nonnegative solution, so
    // among branch roots inside [0,1] passing the residual test the smaller
    // one wins; if neither qualifies the clamp value 1 applies.
    double best = 1.0;
    for (const double sign : {+1.0, -1.0}) {
        const double s = (1.0 + 2.0 * a - 9.0 * b + sign * root) / denom;
        if (s < 0.0 || s > 1.0) continue;
        if (std::abs(off.pgf(s) - s) < 1e-8 && s < best) best = s;
    }
    return best;
}

ExtendedTime mean_tau_tree(const TreeParams& params, const SolverConfig& cfg) {
    validate(params);
    if (params.d != 2 && params.d != 3)
        throw DomainError("mean_tau_tree: closed forms exist for d in {2,3} only");
    const double lam = params.rate.lambda;
    const double lam_crit = critical_lambda(params.d, cfg);
    if (lam > lam_crit + cfg.root_tol)
        throw DomainError("mean_tau_tree: lambda=" + std::to_string(lam) +
                          " is supercritical (lambda_d=" + std::to_string(lam_crit) +
                          "); the mean extinction time is defined for lambda <= lambda_d");
    // Exact-boundary inputs (within root_tol of lambda_d) resolve to the
    // infinite branch.
    if (lam >= lam_crit - cfg.root_tol) return ExtendedTime::infinite();

    const double alpha = std::log1p(lam) / lam;
    if (params.d == 2) {
        const double beta =
            1.0 - std::log(std::pow(lam + 2.0, 4) / (16.0 * (lam + 1.0))) / lam;
        return ExtendedTime::finite(std::log(alpha / (alpha - beta)) / beta);
    }
    const double theta =
        1.0 - std::log(std::pow(2.0 * lam + 3.0, 9) /
                       (std::pow(27.0, 3) * std::pow(lam + 1.0, 4))) /
                  (2.0 * lam);
    const double gamma =
        1.0 - std::log(std::pow(lam + 3.0, 18) * std::pow(lam + 1.0, 2) /
                       (std::pow(27.0, 3) * std::pow(2.0 * lam + 3.0, 9))) /
                  (2.0 * lam);
    const double r = std::sqrt(4.0 * alpha * gamma + theta * theta);
    return ExtendedTime::finite(
        std::log((2.0 * alpha - theta + r) / (2.0 * alpha - theta - r)) / r);
}

// ------------------------------------------------------- unrestricted model

double psi_free(const GrowthRate& rate, const SolverConfig& cfg) {
    validate(rate);
    const double lam = rate.lambda;
    if (lam <= 2.0) return 1.0;
    auto G = [lam](double s) { return std::log1p(lam * (1.0 - s)) - lam * s * (1.0 - s); };
    double lo = 0.0, hi = 0.0;
    // G(0) = ln(1+lambda) > 0; s = 1 is always a root and is excluded by
    // scanning only up to 1 - scan_step.
    if (!scan_first_sign_change(G, 0.0, 1.0 - cfg.scan_step, cfg.scan_step, &lo, &hi))
        throw BracketingError("psi_free: no sign change found below 1 - scan_step for lambda=" +
                              std::to_string(lam));
    const auto r = find_root_bracketed(G, lo, hi, cfg.root_tol);
    if (!r.converged) throw ConvergenceError("psi_free: refinement did not converge");
    return r.x;
}

ExtendedTime mean_tau_free(const GrowthRate& rate, const SolverConfig& cfg) {
    validate(rate);
    const double lam = rate.lambda;
    if (lam > 2.0 + cfg.root_tol)
        throw DomainError("mean_tau_free: defined for lambda <= 2, got lambda=" +
                          std::to_string(lam));
    // At the critical point the integrand behaves like 3/(2x) near 0: the
    // integral diverges logarithmically.
    if (lam >= 2.0 - cfg.root_tol) return ExtendedTime::infinite();

    const double limit0 = 1.0 / (1.0 - lam / 2.0);
    auto integrand = [lam, limit0](double x) {
        if (x == 0.0) return limit0;
        const double denom = lam * std::log1p(x) - x * (lam - x);
        if (denom <= 0.0) return limit0;  // guards rounding noise at x -> 0+
        return x * x / denom;
    };
    const double integral = integrate_adaptive_simpson(integrand, 0.0, lam, cfg.quad_tol);
    return ExtendedTime::finite(integral / lam);
}

double psi_geometric(const GrowthRate& rate, double p) {
    validate(rate);
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("psi_geometric: require p in (0,1), got p=" + std::to_string(p));
    const double lam = rate.lambda;
    return std::min(1.0, (1.0 - p) * (lam + 1.0) / (lam * (1.0 + lam * p)));
}

double psi_binomial(const GrowthRate& rate, double p) {
    validate(rate);
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("psi_binomial: require p in (0,1), got p=" + std::to_string(p));
    return std::min(1.0, (1.0 - p) / (rate.lambda * p));
}

double crossover_lambda(double p, const SolverConfig& cfg) {
    if (!(p > 0.0 && p < 1.0 / 3.0))
        throw DomainError("crossover_lambda: require p in (0, 1/3), got p=" +
                          std::to_string(p) +
                          " (uniform catastrophes dominate for all lambda when p >= 1/3)");
    auto F = [&](double lam) {
        return psi_free({lam}, cfg) - psi_binomial({lam}, p);
    };
    // Just above lambda = 2 the free-model psi dips below 1 while the binomial
    // one is still clamped at 1, so F < 0 there; F turns positive for large
    // lambda (psi_free decays like ln(lambda)/lambda, psi_B like 1/lambda).
    const double start = 2.0 + 0.01;
    double span = 2.0;
    double lo = 0.0, hi = 0.0;
    for (;;) {
        const double to = std::min(start + span, cfg.lambda_max);
        if (scan_first_sign_change(F, start, to, 0.05, &lo, &hi)) break;
        if (to >= cfg.lambda_max)
            throw BracketingError("crossover_lambda: no crossing found below lambda_max");
        span *= 2.0;
    }
    const auto r = find_root_bracketed(F, lo, hi, cfg.root_tol);
    if (!r.converged) throw ConvergenceError("crossover_lambda: refinement did not converge");
    return r.x;
}

}  // namespace catlab
