#include "catlab/validate.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "catlab/analytic.hpp"
#include "catlab/chain_oracle.hpp"
#include "catlab/errors.hpp"
#include "catlab/monte_carlo.hpp"
#include "catlab/output.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/rng.hpp"
#include "catlab/samplers.hpp"
#include "catlab/special_functions.hpp"
#include "catlab/survivor_law.hpp"
#include "json.hpp"

namespace catlab {

namespace {

// 0.999 quantiles of the chi-square distribution (goodness-of-fit checks run
// at the 1e-3 rejection level).
constexpr double kChi2_999_df2 = 13.815511;
constexpr double kChi2_999_df3 = 16.266236;
constexpr double kChi2_999_df21 = 46.797038;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool ok;
    std::string detail;
};

struct Checker {
    std::vector<CheckResult> results;

    template <typename Fn>
    void run(const std::string& name, Fn&& body) {
        try {
            Outcome o = body();
            results.push_back({name, o.ok, std::move(o.detail)});
        } catch (const std::exception& e) {
            results.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
};

// ------------------------------------------------------------ quick checks

std::uint64_t small_binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

// Reference for the log-based reduction of Phi(z,1,a) at integer a.  The
// subtraction ln(1-z) + sum_{j<a} z^j/j cancels to ~z^a, so for small z and
// large a a double-precision evaluation loses up to seven digits; 128-bit
// arithmetic keeps the reference accurate to well below the comparison bound.
double lerch_closed_reduction(double z, int a) {
    const __float128 zq = z;
    __float128 partial = 0;
    __float128 zpow = 1;
    for (int j = 1; j < a; ++j) {
        zpow *= zq;
        partial += zpow / __float128(j);
    }
    zpow *= zq;  // now z^a
    return double(-(logq(__float128(1) - zq) + partial) / zpow);
}

void add_special_function_checks(Checker& ck, const SolverConfig& cfg) {
    ck.run("lerch-closed-reduction", [&] {
        double worst = 0.0;
        for (int a = 1; a <= 10; ++a)
            for (int zi = 1; zi <= 9; ++zi) {
                const double z = zi / 10.0;
                const double series = lerch_phi({z, 1.0, double(a)}, cfg);
                worst = std::max(worst, std::abs(series - lerch_closed_reduction(z, a)));
            }
        const double bound = 10.0 * cfg.series_tol;
        return Outcome{worst <= bound,
                       fmt("max |series - log form| = %.2e over a=1..10, z=0.1..0.9 (bound %.0e)",
                           worst, bound)};
    });

    ck.run("surjection-identity", [&] {
        // sum_k C(d,k) T(n,k) counts all functions from an n-set to a d-set.
        for (int d = 2; d <= 6; ++d)
            for (int n = 1; n <= 12; ++n) {
                std::uint64_t total = 0;
                for (int k = 0; k <= std::min(n, d); ++k)
                    total += small_binomial(d, k) * surjection_count(unsigned(n), unsigned(k));
                std::uint64_t dn = 1;
                for (int i = 0; i < n; ++i) dn *= std::uint64_t(d);
                if (total != dn)
                    return Outcome{false, fmt("d=%d n=%d: sum C(d,k)T(n,k) = %llu != d^n = %llu",
                                              d, n, (unsigned long long)total,
                                              (unsigned long long)dn)};
            }
        return Outcome{true, "sum_k C(d,k) T(n,k) = d^n exactly for d=2..6, n=1..12"};
    });

    ck.run("surjection-brute-force", [&] {
        if (surjection_count(0, 0) != 1 || surjection_count(3, 0) != 0 ||
            surjection_count(2, 3) != 0)
            return Outcome{false, "edge cases (0,0)/(n,0)/(k>n) wrong"};
        for (unsigned n = 1; n <= 8; ++n)
            for (unsigned k = 1; k <= n; ++k) {
                std::uint64_t total = 1;
                for (unsigned i = 0; i < n; ++i) total *= k;
                std::vector<unsigned> f(n, 0);
                std::uint64_t onto = 0;
                const unsigned full = (1u << k) - 1;
                for (std::uint64_t c = 0; c < total; ++c) {
                    unsigned mask = 0;
                    for (unsigned i = 0; i < n; ++i) mask |= 1u << f[i];
                    if (mask == full) ++onto;
                    for (unsigned i = 0; i < n; ++i) {
                        if (++f[i] < k) break;
                        f[i] = 0;
                    }
                }
                if (onto != surjection_count(n, k))
                    return Outcome{false, fmt("n=%u k=%u: enumeration %llu != formula %llu", n, k,
                                              (unsigned long long)onto,
                                              (unsigned long long)surjection_count(n, k))};
            }
        return Outcome{true, "matches enumeration of all k^n functions for n<=8, k<=n"};
    });
}

void add_survivor_law_checks(Checker& ck) {
    const double lambdas[] = {0.5, 1.0, 2.0, 5.0, 10.0};

    ck.run("survivor-normalization", [&] {
        for (const double lam : lambdas) {
            const SurvivorLaw law({lam});
            double sum = 0.0;
            for (int n = 0; n <= law.n_max(); ++n) sum += law.pmf(n);
            // Each pmf evaluation is contracted to +/- series_tol, so the
            // truncated sum may sit below 1 by the geometric tail plus the
            // accumulated per-term evaluation budget.
            const double eval_budget = double(law.n_max() + 1) * law.config().series_tol;
            if (!(sum + law.tail_bound() + eval_budget >= 1.0 && sum <= 1.0 + 1e-9))
                return Outcome{false,
                               fmt("lambda=%g: sum pmf = %.14f, tail bound %.1e, eval budget %.1e",
                                   lam, sum, law.tail_bound(), eval_budget)};
        }
        return Outcome{true,
                       "sum pmf in [1 - tail - eval budget, 1 + 1e-9] for lambda in {0.5,1,2,5,10}"};
    });

    ck.run("survivor-pgf-pmf-consistency", [&] {
        double worst = 0.0, bound = 0.0;
        for (const double lam : lambdas) {
            const SurvivorLaw law({lam});
            for (const double s : {0.0, 0.25, 0.5, 0.75, 0.9}) {
                double sum = 0.0, spow = 1.0;
                for (int n = 0; n <= law.n_max(); ++n, spow *= s) sum += spow * law.pmf(n);
                worst = std::max(worst, std::abs(law.pgf(s) - sum));
                bound = std::max(bound, law.tail_bound() + 1e-9);
            }
        }
        return Outcome{worst <= bound,
                       fmt("max |pgf - truncated sum| = %.2e (bound %.1e)", worst, bound)};
    });

    ck.run("survivor-mean-consistency", [&] {
        for (const double lam : lambdas) {
            const SurvivorLaw law({lam});
            double sum = 0.0;
            for (int n = 0; n <= law.n_max(); ++n) sum += double(n) * law.pmf(n);
            // Tail of sum_{n>N} n q^n for the dominating geometric bound.
            const double q = lam / (lam + 1.0);
            const int N = law.n_max();
            const double tail =
                std::pow(q, N + 1) * ((N + 1) * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
            if (std::abs(law.mean() - sum) > tail + 1e-9)
                return Outcome{false, fmt("lambda=%g: |lambda/2 - truncated mean| = %.2e > %.2e",
                                          lam, std::abs(law.mean() - sum), tail + 1e-9)};
        }
        return Outcome{true, "|lambda/2 - sum n pmf(n)| within geometric-tail bound, all lambdas"};
    });

    ck.run("survivor-pgf-monotone-lambda", [&] {
        for (const double s : {0.0, 0.3, 0.6, 0.9}) {
            double prev = 2.0;
            for (const double lam : {0.5, 1.0, 2.0, 4.0, 8.0}) {
                const double v = SurvivorLaw({lam}).pgf(s);
                if (!(v < prev))
                    return Outcome{false, fmt("pgf not strictly decreasing in lambda at s=%g", s)};
                prev = v;
            }
        }
        return Outcome{true, "pgf strictly decreasing in lambda at s in {0,0.3,0.6,0.9}"};
    });
}

void add_analytic_checks(Checker& ck, const SolverConfig& cfg) {
    ck.run("offspring-law-normalization", [&] {
        for (const int d : {2, 3, 5, 8})
            for (const double lam : {1.0, 4.0, 6.0}) {
                const OffspringLaw law = offspring_law_tree({d, {lam}}, cfg);
                double sum = 0.0;
                for (const double p : law.probs) {
                    if (p < -1e-9 || p > 1.0 + 1e-9)
                        return Outcome{false, fmt("d=%d lambda=%g: p_k = %.3g out of range", d,
                                                  lam, p)};
                    sum += p;
                }
                const double p0 = std::log1p(lam) / lam;
                if (std::abs(sum - 1.0) > 1e-9 || std::abs(law.probs[0] - p0) > 1e-9)
                    return Outcome{false,
                                   fmt("d=%d lambda=%g: sum=%.12f, p0 offset %.2e", d, lam, sum,
                                       std::abs(law.probs[0] - p0))};
            }
        return Outcome{true, "sum p_k = 1 and p_0 = ln(lambda+1)/lambda, d in {2,3,5,8}"};
    });

    ck.run("psi2-fixed-point-residual", [&] {
        double worst = 0.0;
        for (const double lam : {4.0, 5.5, 6.0, 8.0, 15.0}) {
            const TreeParams tp{2, {lam}};
            const double psi = psi_tree_closed(tp);
            worst = std::max(worst, std::abs(offspring_law_tree(tp, cfg).pgf(psi) - psi));
        }
        return Outcome{worst < 1e-8, fmt("max |g(psi)-psi| = %.2e (bound 1e-8)", worst)};
    });

    ck.run("psi3-fixed-point-residual", [&] {
        double worst = 0.0;
        for (const double lam : {3.0, 4.0, 5.0, 6.0, 10.0, 12.0}) {
            const TreeParams tp{3, {lam}};
            const double psi = psi_tree_closed(tp);
            worst = std::max(worst, std::abs(offspring_law_tree(tp, cfg).pgf(psi) - psi));
        }
        return Outcome{worst < 1e-8, fmt("max |g(psi)-psi| = %.2e (bound 1e-8)", worst)};
    });

    ck.run("psi-free-fixed-point-residual", [&] {
        double worst = 0.0;
        for (const double lam : {2.5, 4.0, 10.0}) {
            const double s = psi_free({lam}, cfg);
            if (!(s > 0.0 && s < 1.0))
                return Outcome{false, fmt("lambda=%g: psi=%g not in (0,1)", lam, s)};
            worst = std::max(worst,
                             std::abs(std::log1p(lam * (1.0 - s)) - lam * s * (1.0 - s)));
        }
        return Outcome{worst < 1e-10, fmt("max residual = %.2e (bound 1e-10)", worst)};
    });

    ck.run("psi-closed-general-agreement", [&] {
        double worst = 0.0;
        for (const int d : {2, 3}) {
            const double crit = critical_lambda(d, cfg);
            for (const double off : {0.5, 2.0, 10.0}) {
                const TreeParams tp{d, {crit + off}};
                worst = std::max(worst,
                                 std::abs(psi_tree_closed(tp) - psi_tree_general(tp, cfg)));
            }
        }
        return Outcome{worst < 1e-8,
                       fmt("max |closed - fixed point| = %.2e at lambda_d + {0.5,2,10}, d in {2,3}",
                           worst)};
    });

    ck.run("psi-threshold-consistency", [&] {
        for (const int d : {2, 3, 5}) {
            const double crit = critical_lambda(d, cfg);
            for (const double side : {-0.05, 0.05}) {
                const TreeParams tp{d, {crit + side}};
                const bool survives = tree_survival_condition(tp);
                const bool psi_below_one = psi_tree_general(tp, cfg) < 1.0;
                if (survives != psi_below_one)
                    return Outcome{false,
                                   fmt("d=%d lambda=lambda_d%+g: condition=%d but psi<1 is %d", d,
                                       side, int(survives), int(psi_below_one))};
            }
        }
        return Outcome{true, "psi = 1 exactly when the survival condition fails, lambda_d +/- 0.05"};
    });

    ck.run("psi-free-threshold", [&] {
        for (const double lam : {1.9, 2.0, 2.1}) {
            const double psi = psi_free({lam}, cfg);
            if ((lam <= 2.0) != (psi == 1.0))
                return Outcome{false, fmt("lambda=%g: psi=%.12f", lam, psi)};
        }
        return Outcome{true, "psi_free = 1 exactly for lambda <= 2 on {1.9, 2.0, 2.1}"};
    });

    ck.run("psi-monotone-lambda-d", [&] {
        for (const int d : {2, 3}) {
            double prev = 2.0;
            for (const double lam : {5.5, 6.0, 7.0, 8.0, 10.0, 12.0}) {
                const double v = psi_tree_general({d, {lam}}, cfg);
                if (v > prev + 1e-12)
                    return Outcome{false, fmt("d=%d: psi increased at lambda=%g", d, lam)};
                prev = v;
            }
        }
        double prev = 2.0;
        for (const int d : {2, 3, 4, 5}) {
            const double v = psi_tree_general({d, {6.0}}, cfg);
            if (v > prev + 1e-12)
                return Outcome{false, fmt("lambda=6: psi increased at d=%d", d)};
            prev = v;
        }
        return Outcome{true, "psi nonincreasing in lambda (d=2,3) and in d (lambda=6)"};
    });

    ck.run("critical-lambda-monotone", [&] {
        double prev = 1e300;
        for (const int d : {2, 3, 5, 7, 10, 20, 50, 100, 200}) {
            const double v = critical_lambda(d, cfg);
            if (!(v < prev)) return Outcome{false, fmt("lambda_d not decreasing at d=%d", d)};
            if (!(v > 2.0)) return Outcome{false, fmt("lambda_%d = %g <= 2", d, v)};
            prev = v;
        }
        const double gap = critical_lambda(200, cfg) - 2.0;
        return Outcome{gap < 0.02,
                       fmt("strictly decreasing over d; lambda_200 - 2 = %.4f (< 0.02)", gap)};
    });

    ck.run("tau-parameter-identification", [&] {
        // The constants of the d=2 and d=3 mean-time formulas must equal the
        // matching offspring-law entries.
        double worst = 0.0;
        for (const double lam : {0.5, 1.0, 2.0, 3.0}) {
            const double alpha = std::log1p(lam) / lam;
            const double beta =
                1.0 - (4.0 * std::log(lam + 2.0) - std::log(16.0) - std::log1p(lam)) / lam;
            const double theta = 1.0 - (9.0 * std::log(2.0 * lam + 3.0) - 9.0 * std::log(3.0) -
                                        4.0 * std::log1p(lam)) /
                                           (2.0 * lam);
            const double gamma =
                1.0 - (18.0 * std::log(lam + 3.0) + 2.0 * std::log1p(lam) - 9.0 * std::log(3.0) -
                       9.0 * std::log(2.0 * lam + 3.0)) /
                          (2.0 * lam);
            const OffspringLaw l2 = offspring_law_tree({2, {lam}}, cfg);
            const OffspringLaw l3 = offspring_law_tree({3, {lam}}, cfg);
            worst = std::max({worst, std::abs(alpha - l2.probs[0]), std::abs(beta - l2.probs[2]),
                              std::abs(alpha - l3.probs[0]),
                              std::abs(theta - (l3.probs[2] + l3.probs[3])),
                              std::abs(gamma - l3.probs[3])});
        }
        return Outcome{worst < 1e-9,
                       fmt("max |constant - offspring entry| = %.2e (bound 1e-9)", worst)};
    });

    ck.run("tau-boundary-infinite", [&] {
        for (const int d : {2, 3})
            if (!mean_tau_tree({d, {critical_lambda(d, cfg)}}, cfg).is_infinite())
                return Outcome{false, fmt("mean time finite at lambda_%d", d)};
        if (!mean_tau_free({2.0}, cfg).is_infinite())
            return Outcome{false, "mean time finite at lambda = 2"};
        return Outcome{true, "mean time INFINITE at lambda_2, lambda_3, and lambda = 2"};
    });

    ck.run("tau-integral-equivalence", [&] {
        // Substituting x = lambda(1-y) maps the mean-time integral to
        // integral_0^1 (1-y)/(f(y)-y) dy with f the survivor pgf; both are
        // computed independently here.
        double worst = 0.0;
        for (const double lam : {0.5, 1.0, 1.5}) {
            const SurvivorLaw law({lam});
            const double limit1 = 1.0 / (1.0 - lam / 2.0);
            const auto integrand = [&](double y) {
                if (1.0 - y < 1e-8) return limit1;
                return (1.0 - y) / (law.pgf(y) - y);
            };
            const double narayan = integrate_adaptive_simpson(integrand, 0.0, 1.0, 1e-9);
            const ExtendedTime direct = mean_tau_free({lam}, cfg);
            worst = std::max(worst, std::abs(direct.value() - narayan));
        }
        return Outcome{worst < 1e-6,
                       fmt("max |direct - substituted form| = %.2e at lambda in {0.5,1,1.5}",
                           worst)};
    });

    ck.run("tau-small-lambda-limit", [&] {
        const double lam = 1e-3;
        const double tau = mean_tau_free({lam}, cfg).value();
        const double limit = 1.0 / (1.0 - lam / 2.0);
        return Outcome{std::abs(tau - limit) < 1e-3,
                       fmt("tau(1e-3) = %.9f vs 1/(1-lambda/2) = %.9f (|diff| = %.1e < 1e-3)",
                           tau, limit, std::abs(tau - limit))};
    });

    ck.run("crossover-residual", [&] {
        const double x25 = crossover_lambda(0.25, cfg);
        if (!(x25 > 10.57 && x25 < 10.59))
            return Outcome{false, fmt("crossover(0.25) = %.6f outside [10.57, 10.59]", x25)};
        const double x30 = crossover_lambda(0.30, cfg);
        const double resid = std::abs(psi_free({x30}, cfg) - psi_binomial({x30}, 0.30));
        return Outcome{resid < 1e-8,
                       fmt("crossover(0.25) = %.4f; |psi_free - psi_binom| at crossover(0.30) = "
                           "%.2e",
                           x25, resid)};
    });
}

void add_serialization_checks(Checker& ck) {
    ck.run("csv-round-trip", [&] {
        Table t;
        t.columns = {"d", "lambda", "mean_time", "method", "note"};
        t.rows.push_back({std::int64_t(2), 5.026, std::numeric_limits<double>::infinity(),
                          std::string("closed-form"), std::string("a,b \"q\"")});
        t.rows.push_back({std::int64_t(3), -1.5, 2.25, std::string("fixed-point"),
                          std::string("123")});
        t.rows.push_back({std::int64_t(-7), 2.0, 0.001953125, std::string(""),
                          std::string("plain")});
        const std::string csv = to_csv(t);
        if (csv.find("inf") == std::string::npos)
            return Outcome{false, "infinite cell did not serialize as the `inf` literal"};
        if (!tables_equal(parse_csv(csv), t))
            return Outcome{false, "parse(to_csv(t)) != t"};
        return Outcome{true, "emit+parse reproduces cells exactly (types, inf, quoting)"};
    });

    ck.run("json-envelope", [&] {
        Table t;
        t.columns = {"model", "lambda", "value"};
        t.rows.push_back({std::string("free"), 2.0, std::numeric_limits<double>::infinity()});
        const std::string js =
            to_json("tau", {{"model", std::string("free")}, {"lambda", 2.0}}, t);
        const auto j = nlohmann::json::parse(js);
        if (j["schema"] != "v1") return Outcome{false, "missing schema tag"};
        if (j["command"] != "tau") return Outcome{false, "missing command echo"};
        if (j["params"]["lambda"] != 2.0) return Outcome{false, "params not echoed"};
        if (j["results"][0]["value"] != "inf")
            return Outcome{false, "infinite value not the string \"inf\""};
        if (js.find("nan") != std::string::npos || js.find("null") != std::string::npos)
            return Outcome{false, "unexpected nan/null in JSON"};
        return Outcome{true, "schema v1, params echoed, infinite value as \"inf\""};
    });
}

// --------------------------------------------------------- Monte Carlo checks

struct EnvGuard {
    // Temporarily overrides CATLAB_THREADS, restoring the old value on exit.
    explicit EnvGuard(const char* value) {
        const char* old = std::getenv("CATLAB_THREADS");
        had_ = old != nullptr;
        if (had_) old_ = old;
        if (value)
            ::setenv("CATLAB_THREADS", value, 1);
        else
            ::unsetenv("CATLAB_THREADS");
    }
    ~EnvGuard() {
        if (had_)
            ::setenv("CATLAB_THREADS", old_.c_str(), 1);
        else
            ::unsetenv("CATLAB_THREADS");
    }

private:
    bool had_;
    std::string old_;
};

bool summaries_identical(const SimSummary& a, const SimSummary& b) {
    return a.extinct_count == b.extinct_count && a.survived_count == b.survived_count &&
           a.horizon_censored == b.horizon_censored && a.extinction_times == b.extinction_times &&
           a.mean_extinction_time == b.mean_extinction_time &&
           a.extinction_frequency == b.extinction_frequency;
}

void add_monte_carlo_checks(Checker& ck, std::uint64_t seed) {
    const SolverConfig cfg;

    ck.run("chain-oracle-truncation", [&] {
        double worst = 0.0;
        for (const double lam : {1.0, 3.0})
            worst = std::max(worst,
                             std::abs(no_dispersion_mean_extinction_time_oracle(lam, 400) -
                                      no_dispersion_mean_extinction_time_oracle(lam, 800)));
        return Outcome{worst < 1e-9,
                       fmt("|oracle(M=400) - oracle(M=800)| <= %.2e at lambda in {1,3}", worst)};
    });

    ck.run("mc-embedded-chain-frequencies", [&] {
        const double lam = 1.0;
        const std::int64_t draws = 100000;
        for (const std::int64_t i : {1, 2, 5}) {
            RngStream rng(seed, 700 + std::uint64_t(i), 0);
            std::vector<std::int64_t> counts(std::size_t(i) + 2, 0);  // j<i, then up
            for (std::int64_t k = 0; k < draws; ++k) {
                const std::int64_t next = no_dispersion_jump(rng, i, lam);
                ++counts[std::size_t(next == i + 1 ? i + 1 : next)];
            }
            for (std::int64_t cell = 0; cell <= i + 1; ++cell) {
                if (cell == i) continue;  // the chain never stays put
                const double p =
                    cell == i + 1 ? lam / (lam + 1.0) : 1.0 / (double(i) * (lam + 1.0));
                const double f = double(counts[std::size_t(cell)]) / double(draws);
                const double bound = 4.0 * std::sqrt(p * (1.0 - p) / double(draws));
                if (std::abs(f - p) > bound)
                    return Outcome{false,
                                   fmt("from i=%lld to %lld: freq %.5f vs p %.5f (4sigma %.5f)",
                                       (long long)i, (long long)cell, f, p, bound)};
            }
        }
        return Outcome{true, "one-step frequencies from i in {1,2,5} within 4 sigma at 1e5 draws"};
    });

    ck.run("mc-offspring-law-chi-square", [&] {
        const struct {
            int d;
            double lam;
            double quantile;
        } cases[] = {{2, 6.0, kChi2_999_df2}, {3, 4.0, kChi2_999_df3}};
        const std::int64_t events = 100000;
        for (const auto& c : cases) {
            const SurvivorLaw law({c.lam});
            const DiscreteCdfSampler sampler = make_survivor_sampler(law);
            const OffspringLaw expect = offspring_law_tree({c.d, {c.lam}}, cfg);
            RngStream rng(seed, 800 + std::uint64_t(c.d), 0);
            std::vector<std::int64_t> counts(std::size_t(c.d) + 1, 0);
            for (std::int64_t e = 0; e < events; ++e)
                ++counts[std::size_t(
                    draw_occupancy(rng, std::uint64_t(sampler.draw(rng)), c.d))];
            double stat = 0.0;
            for (int k = 0; k <= c.d; ++k) {
                const double expected = double(events) * expect.probs[std::size_t(k)];
                const double diff = double(counts[std::size_t(k)]) - expected;
                stat += diff * diff / expected;
            }
            if (stat > c.quantile)
                return Outcome{false, fmt("d=%d lambda=%g: chi2 = %.2f > %.2f (df=%d, level 1e-3)",
                                          c.d, c.lam, stat, c.quantile, c.d)};
        }
        return Outcome{true,
                       "occupied-children counts match the offspring law (chi2 at 1e-3; d=2,3)"};
    });

    ck.run("mc-survivor-draw-chi-square", [&] {
        // Route A: inversion from the pmf table.  Route B: geometric colony
        // size at the catastrophe, then the uniform cut.  Two-sample test on
        // cells {0..20, >=21}.
        const double lam = 5.0;
        const std::int64_t n = 100000;
        const SurvivorLaw law({lam});
        const DiscreteCdfSampler sampler = make_survivor_sampler(law);
        const double log_q = std::log(lam / (lam + 1.0));
        RngStream ra(seed, 900, 0), rb(seed, 901, 0);
        constexpr int kCells = 22;
        std::vector<double> a(kCells, 0.0), b(kCells, 0.0);
        for (std::int64_t i = 0; i < n; ++i) {
            const int na = sampler.draw(ra);
            ++a[std::size_t(std::min(na, kCells - 1))];
            const std::uint64_t x = draw_colony_size_at_catastrophe(rb, log_q);
            const int nb = int(rb.next_below(x));
            ++b[std::size_t(std::min(nb, kCells - 1))];
        }
        double stat = 0.0;
        for (int c = 0; c < kCells; ++c) {
            const double pooled = (a[c] + b[c]) / double(2 * n);
            const double e = double(n) * pooled;
            if (e == 0.0) continue;
            stat += (a[c] - e) * (a[c] - e) / e + (b[c] - e) * (b[c] - e) / e;
        }
        return Outcome{stat <= kChi2_999_df21,
                       fmt("two-sample chi2 = %.2f (0.999 quantile %.2f, df=21, lambda=5)", stat,
                           kChi2_999_df21)};
    });

    ck.run("mc-reproducibility", [&] {
        SimConfig c;
        c.seed = seed;
        c.replicates = 1000;
        c.model = ModelKind::FREE;
        c.rate = {4.0};
        const SimSummary s1 = estimate(c);
        const SimSummary s2 = estimate(c);
        if (!summaries_identical(s1, s2)) return Outcome{false, "re-run differed"};
        return Outcome{true, fmt("two runs bitwise identical (%lld extinct of %lld)",
                                 (long long)s1.extinct_count, (long long)c.replicates)};
    });

    ck.run("mc-thread-invariance", [&] {
        SimConfig c;
        c.seed = seed;
        c.replicates = 1000;
        c.model = ModelKind::FREE;
        c.rate = {4.0};
        SimSummary s1, s3;
        {
            EnvGuard guard("1");
            s1 = estimate(c);
        }
        {
            EnvGuard guard("3");
            s3 = estimate(c);
        }
        if (!summaries_identical(s1, s3))
            return Outcome{false, "1-thread vs 3-thread summaries differ"};
        return Outcome{true, "summaries identical with CATLAB_THREADS=1 and =3"};
    });

    ck.run("mc-seed-independence", [&] {
        SimConfig c;
        c.replicates = 5000;
        c.model = ModelKind::FREE;
        c.rate = {4.0};
        c.seed = seed;
        const double f1 = estimate(c).extinction_frequency;
        c.seed = seed + 1000003;
        const double f2 = estimate(c).extinction_frequency;
        const double psi = psi_free({4.0}, cfg);
        const double bound =
            4.0 * std::sqrt(2.0 * psi * (1.0 - psi) / double(c.replicates));
        return Outcome{std::abs(f1 - f2) <= bound,
                       fmt("|f(seed A) - f(seed B)| = %.4f (joint 4 sigma %.4f)",
                           std::abs(f1 - f2), bound)};
    });

    ck.run("mc-individual-level-agreement", [&] {
        // Differential oracle: per-individual event simulation must agree with
        // the survivor-law shortcut.
        const struct {
            ModelKind model;
            int d;
            double lam;
        } cases[] = {{ModelKind::TREE, 2, 6.0}, {ModelKind::FREE, 2, 4.0}};
        for (const auto& cse : cases) {
            SimConfig c;
            c.seed = seed;
            c.replicates = 2000;
            c.colony_cap = 1000;
            c.model = cse.model;
            c.d = cse.d;
            c.rate = {cse.lam};
            const double f_colony = estimate(c).extinction_frequency;
            c.individual_level = true;
            const double f_indiv = estimate(c).extinction_frequency;
            const double psi = cse.model == ModelKind::TREE
                                   ? psi_tree_closed({cse.d, {cse.lam}})
                                   : psi_free({cse.lam}, cfg);
            const double bound =
                4.0 * std::sqrt(2.0 * psi * (1.0 - psi) / double(c.replicates));
            if (std::abs(f_colony - f_indiv) > bound)
                return Outcome{false,
                               fmt("model=%d: colony %.4f vs individual %.4f (4 sigma %.4f)",
                                   int(cse.model), f_colony, f_indiv, bound)};
        }
        return Outcome{true,
                       "colony-level and individual-level frequencies agree (TREE 2/6, FREE 4)"};
    });

    const auto frequency_check = [&ck, seed, &cfg](const char* name, ModelKind model, double lam,
                                                   int d, double p, std::int64_t reps,
                                                   double psi) {
        ck.run(name, [=] {
            SimConfig c;
            c.seed = seed;
            c.replicates = reps;
            c.model = model;
            c.rate = {lam};
            c.d = d;
            c.p = p;
            const SimSummary s = estimate(c);
            if (s.extinct_count + s.survived_count != c.replicates)
                return Outcome{false, "outcome counts do not add up to replicates"};
            const double bound = 4.0 * std::sqrt(psi * (1.0 - psi) / double(reps));
            return Outcome{std::abs(s.extinction_frequency - psi) <= bound,
                           fmt("freq %.4f vs psi %.4f (4 sigma %.4f, %lld replicates)",
                               s.extinction_frequency, psi, bound, (long long)reps)};
        });
        (void)cfg;
    };
    frequency_check("mc-free-frequency", ModelKind::FREE, 4.0, 2, 0.5, 10000,
                    psi_free({4.0}, cfg));
    frequency_check("mc-tree-frequency", ModelKind::TREE, 6.0, 2, 0.5, 5000,
                    psi_tree_closed({2, {6.0}}));
    frequency_check("mc-binomial-frequency", ModelKind::FREE_BINOMIAL, 3.0, 2, 0.5, 5000,
                    psi_binomial({3.0}, 0.5));
    frequency_check("mc-geometric-frequency", ModelKind::FREE_GEOMETRIC, 10.0, 2, 0.5, 5000,
                    psi_geometric({10.0}, 0.5));

    const auto mean_time_check = [&ck, seed](const char* name, ModelKind model, double lam, int d,
                                             std::int64_t reps, double expected) {
        ck.run(name, [=] {
            SimConfig c;
            c.seed = seed;
            c.replicates = reps;
            c.model = model;
            c.rate = {lam};
            c.d = d;
            const SimSummary s = estimate(c);
            if (s.extinct_count != c.replicates)
                return Outcome{false, fmt("only %lld of %lld replicates went extinct",
                                          (long long)s.extinct_count, (long long)reps)};
            const double bound = 3.0 * s.mean_time_stderr;
            return Outcome{std::abs(s.mean_extinction_time - expected) <= bound,
                           fmt("mean %.4f vs analytic %.4f (3 SE = %.4f)",
                               s.mean_extinction_time, expected, bound)};
        });
    };
    mean_time_check("mc-no-dispersion-mean-time", ModelKind::NO_DISPERSION, 1.0, 2, 100000,
                    no_dispersion_mean_extinction_time_oracle(1.0));
    mean_time_check("mc-tree-mean-time", ModelKind::TREE, 1.0, 2, 100000,
                    mean_tau_tree({2, {1.0}}, cfg).value());
    mean_time_check("mc-free-mean-time", ModelKind::FREE, 1.0, 2, 100000,
                    mean_tau_free({1.0}, cfg).value());

    ck.run("mc-horizon-mean-sanity", [&] {
        // With essentially no births the colony dies at its first Exp(1)
        // catastrophe, so the mean extinction time is 1.
        SimConfig c;
        c.seed = seed;
        c.replicates = 10000;
        c.horizon = 1000.0;
        c.model = ModelKind::NO_DISPERSION;
        c.rate = {0.0001};
        const SimSummary s = estimate(c);
        if (s.extinct_count + s.survived_count != c.replicates ||
            s.horizon_censored != s.survived_count)
            return Outcome{false, "censoring bookkeeping inconsistent"};
        return Outcome{std::abs(s.mean_extinction_time - 1.0) <= 0.03,
                       fmt("mean %.4f vs 1.0 (tolerance 0.03), censored %lld",
                           s.mean_extinction_time, (long long)s.horizon_censored)};
    });

    ck.run("mc-cap-bias-bound", [&] {
        // P(a run at the cap later dies) <= psi^cap; with cap 1e5 (1e3 for the
        // differential runs) this is far below any reported tolerance.
        const double caps[] = {100000.0, 1000.0};
        const double psis[] = {psi_tree_closed({2, {6.0}}), psi_free({4.0}, cfg),
                               psi_binomial({3.0}, 0.5), psi_geometric({10.0}, 0.5)};
        double worst = -1e300;  // largest log-bias exponent
        for (const double cap : caps)
            for (const double psi : psis) worst = std::max(worst, cap * std::log(psi));
        const double threshold = std::log(1e-12);
        return Outcome{worst < threshold,
                       fmt("max ln(psi^cap) = %.1f < ln(1e-12) = %.1f", worst, threshold)};
    });
}

}  // namespace

std::vector<CheckResult> run_quick_checks() {
    Checker ck;
    const SolverConfig cfg;
    add_special_function_checks(ck, cfg);
    add_survivor_law_checks(ck);
    add_analytic_checks(ck, cfg);
    add_serialization_checks(ck);
    return std::move(ck.results);
}

std::vector<CheckResult> run_full_checks(std::uint64_t seed) {
    Checker ck;
    const SolverConfig cfg;
    add_special_function_checks(ck, cfg);
    add_survivor_law_checks(ck);
    add_analytic_checks(ck, cfg);
    add_serialization_checks(ck);
    add_monte_carlo_checks(ck, seed);
    return std::move(ck.results);
}

}  // namespace catlab
