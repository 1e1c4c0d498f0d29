// Acceptance suite: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line (plus indented evidence lines).
//
// Usage:  acceptance            runs all criteria
//         acceptance 3 7        runs criteria 3 and 7 only
// Exit code 0 iff every executed criterion passed.
//
// Every tolerance below is fixed here, in code; nothing is left to later
// calibration.  Criterion 1 compares against the published three-decimal
// reference table for the critical rates verbatim, including two entries
// (d = 20 and d = 50) that do not round from the roots of the defining
// equation; see the evidence lines it prints.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "catlab/analytic.hpp"
#include "catlab/chain_oracle.hpp"
#include "catlab/monte_carlo.hpp"
#include "catlab/output.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/survivor_law.hpp"

using namespace catlab;

namespace {

std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[512];
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct CliRun {
    int code = -1;
    std::string out;
    double seconds = 0.0;
};

CliRun run_cli(const std::string& args) {
    CliRun r;
    const std::string cmd = std::string(CATLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    const double t0 = now_seconds();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.seconds = now_seconds() - t0;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 1: the critical-rate table, rounded to three decimals, matches the
// published nine-value reference row exactly; runtime < 1 s.
bool criterion_1(std::string& line, std::vector<std::string>& detail) {
    const int ds[] = {2, 3, 5, 7, 10, 20, 50, 100, 200};
    const double published[] = {5.026, 3.432, 2.693, 2.456, 2.302,
                                2.133, 2.053, 2.027, 2.013};
    const CliRun r = run_cli("table1");
    if (r.code != 0) {
        line = "critical-rate table: CLI exited with code " + std::to_string(r.code);
        return false;
    }
    const Table t = parse_csv(r.out);
    if (t.rows.size() != 9) {
        line = fmt("critical-rate table: expected 9 rows, got %zu", t.rows.size());
        return false;
    }
    int mismatches = 0;
    for (int i = 0; i < 9; ++i) {
        const double root = std::get<double>(t.rows[i][1]);
        const double rounded = std::get<double>(t.rows[i][2]);
        const bool match = rounded == published[i];
        if (!match) {
            ++mismatches;
            // Residual of the published value in the defining equation
            // d^2/(d-1) ln((x+d)/d) = x, and the large-d expansion 2+8/(3d)
            // the published figure does round from.
            const int d = ds[i];
            const double res = double(d) * d / (d - 1.0) *
                                   std::log((published[i] + d) / d) -
                               published[i];
            detail.push_back(fmt(
                "d=%d: computed root %.9f rounds to %.3f, published %.3f "
                "(equation residual of published value %+.2e; large-d expansion "
                "2+8/(3d) = %.4f rounds to the published figure)",
                d, root, rounded, published[i], res, 2.0 + 8.0 / (3.0 * d)));
        } else {
            detail.push_back(fmt("d=%d: computed root %.9f rounds to %.3f, matches",
                                 ds[i], root, rounded));
        }
    }
    const bool timely = r.seconds < 1.0;
    if (!timely)
        detail.push_back(fmt("runtime %.2f s exceeds the 1 s budget", r.seconds));
    line = fmt(
        "critical-rate table matches the published three-decimal row "
        "(%d of 9 entries match, %.2f s)",
        9 - mismatches, r.seconds);
    return mismatches == 0 && timely;
}

// ---------------------------------------------------------------------------
// Criterion 2: crossover_lambda(0.25) lies in the published bracket
// [10.57, 10.59]; runtime < 1 s.
bool criterion_2(std::string& line, std::vector<std::string>& detail) {
    (void)detail;
    const double t0 = now_seconds();
    const double x = crossover_lambda(0.25);
    const double secs = now_seconds() - t0;
    line = fmt("crossover rate in published bracket (lambda_x(0.25) = %.6f in "
               "[10.57, 10.59], %.3f s)",
               x, secs);
    return x >= 10.57 && x <= 10.59 && secs < 1.0;
}

// ---------------------------------------------------------------------------
// Criterion 3: closed-form and scanned fixed-point extinction probabilities
// agree within 1e-8 on the stated (d, lambda) grid; runtime < 1 s.
bool criterion_3(std::string& line, std::vector<std::string>& detail) {
    const struct {
        int d;
        double lambda;
    } grid[] = {{2, 6.0}, {2, 8.0}, {3, 4.0}, {3, 6.0}};
    const double t0 = now_seconds();
    double worst = 0.0;
    bool ok = true;
    for (const auto& g : grid) {
        const double closed = psi_tree_closed({g.d, {g.lambda}});
        const double general = psi_tree_general({g.d, {g.lambda}});
        const double diff = std::fabs(closed - general);
        worst = std::max(worst, diff);
        if (diff >= 1e-8) {
            ok = false;
            detail.push_back(fmt("d=%d lambda=%g: |%.12f - %.12f| = %.2e >= 1e-8",
                                 g.d, g.lambda, closed, general, diff));
        }
    }
    const double secs = now_seconds() - t0;
    line = fmt("closed-form vs fixed-point extinction probability "
               "(max |diff| %.2e < 1e-8 over 4 pairs, %.3f s)",
               worst, secs);
    return ok && secs < 1.0;
}

// ---------------------------------------------------------------------------
// Criterion 4: unrestricted-dispersion extinction probability is exactly 1 up
// to the threshold and a strict fixed point beyond it.
bool criterion_4(std::string& line, std::vector<std::string>& detail) {
    bool ok = true;
    for (const double lambda : {1.0, 1.9, 2.0}) {
        const double psi = psi_free({lambda});
        if (psi != 1.0) {
            ok = false;
            detail.push_back(fmt("lambda=%g: expected exactly 1, got %.17g",
                                 lambda, psi));
        }
    }
    double worst_residual = 0.0;
    for (const double lambda : {2.5, 4.0, 10.0}) {
        const double psi = psi_free({lambda});
        const SurvivorLaw law(GrowthRate{lambda});
        const double residual = std::fabs(law.pgf(psi) - psi);
        worst_residual = std::max(worst_residual, residual);
        if (!(psi > 0.0 && psi < 1.0) || residual >= 1e-10) {
            ok = false;
            detail.push_back(fmt("lambda=%g: psi=%.12f residual=%.2e (need psi in "
                                 "(0,1), residual < 1e-10)",
                                 lambda, psi, residual));
        }
    }
    line = fmt("unrestricted-model threshold (psi=1 at 1,1.9,2; interior fixed "
               "point beyond, max residual %.2e < 1e-10)",
               worst_residual);
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 5: the mean-time integral equals its substituted alternative form
// within 1e-6 at lambda in {0.5, 1, 1.5}, and tends to 1/(1-lambda/2) as
// lambda -> 0+ (checked at 1e-3 within 1e-3).
bool criterion_5(std::string& line, std::vector<std::string>& detail) {
    bool ok = true;
    double worst = 0.0;
    for (const double lambda : {0.5, 1.0, 1.5}) {
        const double direct = mean_tau_free({lambda}).value();
        // Alternative form: integral over y in [0,1] of (1-y)/(f(y)-y) with f
        // the survivor pgf; the y -> 1 limit of the integrand is 1/(1-lambda/2).
        const SurvivorLaw law(GrowthRate{lambda});
        const double alt = integrate_adaptive_simpson(
            [&](double y) {
                if (1.0 - y < 1e-8) return 1.0 / (1.0 - lambda / 2.0);
                return (1.0 - y) / (law.pgf(y) - y);
            },
            0.0, 1.0, 1e-9);
        const double diff = std::fabs(direct - alt);
        worst = std::max(worst, diff);
        if (diff >= 1e-6) {
            ok = false;
            detail.push_back(fmt("lambda=%g: |%.12f - %.12f| = %.2e >= 1e-6",
                                 lambda, direct, alt, diff));
        }
    }
    const double small = mean_tau_free({1e-3}).value();
    const double limit = 1.0 / (1.0 - 5e-4);
    if (std::fabs(small - limit) >= 1e-3) {
        ok = false;
        detail.push_back(fmt("lambda=1e-3: %.9f vs limit %.9f, |diff| >= 1e-3",
                             small, limit));
    }
    line = fmt("mean-time integral equals substituted form (max |diff| %.2e < "
               "1e-6; small-rate value %.6f within 1e-3 of %.6f)",
               worst, small, limit);
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: simulated extinction frequencies match the analytic
// probabilities within 4 binomial sigma at 1e5 replicates, seed 42, cap 1e5.
bool criterion_6(std::string& line, std::vector<std::string>& detail) {
    struct Case {
        const char* label;
        ModelKind model;
        double lambda;
        int d;
        double p;
        double psi;
    };
    const Case cases[] = {
        {"free lambda=4", ModelKind::FREE, 4.0, 2, 0.5, psi_free({4.0})},
        {"tree d=2 lambda=6", ModelKind::TREE, 6.0, 2, 0.5,
         psi_tree_closed({2, {6.0}})},
        {"binomial-reduction lambda=3 p=0.5", ModelKind::FREE_BINOMIAL, 3.0, 2,
         0.5, psi_binomial({3.0}, 0.5)},
        {"geometric-reduction lambda=10 p=0.5", ModelKind::FREE_GEOMETRIC, 10.0,
         2, 0.5, psi_geometric({10.0}, 0.5)},
    };
    bool ok = true;
    for (const auto& c : cases) {
        SimConfig cfg;
        cfg.model = c.model;
        cfg.rate = {c.lambda};
        cfg.d = c.d;
        cfg.p = c.p;
        cfg.seed = 42;
        cfg.replicates = 100000;
        cfg.colony_cap = 100000;
        const double t0 = now_seconds();
        const SimSummary s = estimate(cfg);
        const double secs = now_seconds() - t0;
        const double bound = 4.0 * std::sqrt(c.psi * (1.0 - c.psi) / 1e5);
        const double diff = std::fabs(s.extinction_frequency - c.psi);
        detail.push_back(fmt("%s: frequency %.5f vs psi %.5f (|diff| %.5f, "
                             "bound %.5f, %.0f s)",
                             c.label, s.extinction_frequency, c.psi, diff, bound,
                             secs));
        if (diff > bound) ok = false;
    }
    line = "simulated extinction frequencies within 4 sigma of analytic values "
           "(1e5 replicates, seed 42, cap 1e5)";
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 7: simulated mean extinction times within 3 standard errors of the
// jump-chain oracle / closed forms at 1e5 extinct replicates.
bool criterion_7(std::string& line, std::vector<std::string>& detail) {
    struct Case {
        const char* label;
        ModelKind model;
        double lambda;
        int d;
        double reference;
    };
    const Case cases[] = {
        {"single-colony lambda=1 (vs jump-chain oracle)",
         ModelKind::NO_DISPERSION, 1.0, 2,
         no_dispersion_mean_extinction_time_oracle(1.0)},
        {"tree d=2 lambda=1 (vs closed form)", ModelKind::TREE, 1.0, 2,
         mean_tau_tree({2, {1.0}}).value()},
        {"free lambda=1 (vs integral)", ModelKind::FREE, 1.0, 2,
         mean_tau_free({1.0}).value()},
    };
    bool ok = true;
    for (const auto& c : cases) {
        SimConfig cfg;
        cfg.model = c.model;
        cfg.rate = {c.lambda};
        cfg.d = c.d;
        cfg.seed = 42;
        cfg.replicates = 100000;
        const SimSummary s = estimate(cfg);
        if (s.extinct_count != cfg.replicates) {
            ok = false;
            detail.push_back(fmt("%s: only %lld of %lld replicates extinct",
                                 c.label, (long long)s.extinct_count,
                                 (long long)cfg.replicates));
            continue;
        }
        const double diff = std::fabs(s.mean_extinction_time - c.reference);
        const double bound = 3.0 * s.mean_time_stderr;
        detail.push_back(fmt("%s: mean %.6f vs %.6f (|diff| %.6f, 3 SE %.6f)",
                             c.label, s.mean_extinction_time, c.reference, diff,
                             bound));
        if (diff > bound) ok = false;
    }
    line = "simulated mean extinction times within 3 standard errors "
           "(1e5 extinct replicates each)";
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: the single-colony model dies out for every growth rate; at
// lambda in {1,3,6} a horizon of 1e4 sees extinction in 100% of 1e4 replicates.
bool criterion_8(std::string& line, std::vector<std::string>& detail) {
    bool ok = true;
    for (const double lambda : {1.0, 3.0, 6.0}) {
        SimConfig cfg;
        cfg.model = ModelKind::NO_DISPERSION;
        cfg.rate = {lambda};
        cfg.seed = 42;
        cfg.replicates = 10000;
        cfg.horizon = 1e4;
        const SimSummary s = estimate(cfg);
        detail.push_back(fmt("lambda=%g: %lld of 10000 extinct", lambda,
                             (long long)s.extinct_count));
        if (s.extinct_count != 10000) ok = false;
    }
    line = "single-colony certain extinction (100% of 1e4 replicates at "
           "lambda in {1,3,6}, horizon 1e4)";
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 9: the built-in check suites pass: full level with seed 42, and
// the quick analytic subset in under 5 seconds.
bool criterion_9(std::string& line, std::vector<std::string>& detail) {
    const CliRun quick = run_cli("validate --level quick");
    detail.push_back(fmt("quick level: exit %d in %.1f s (budget 5 s)", quick.code,
                         quick.seconds));
    const CliRun full = run_cli("validate --level full --seed 42");
    detail.push_back(fmt("full level, seed 42: exit %d in %.1f s", full.code,
                         full.seconds));
    // Surface any failing check lines for the evidence log.
    for (const std::string& out : {quick.out, full.out}) {
        std::size_t pos = 0;
        while ((pos = out.find("[FAIL]", pos)) != std::string::npos) {
            const std::size_t end = out.find('\n', pos);
            detail.push_back(out.substr(pos, end - pos));
            pos = end;
        }
    }
    line = "built-in validation suites (quick < 5 s, full with seed 42)";
    return quick.code == 0 && quick.seconds < 5.0 && full.code == 0;
}

// ---------------------------------------------------------------------------
// Criterion 10: survivor-law identities at lambda in {0.5, 1, 2, 5, 10}:
// truncated normalization, pgf/pmf consistency, and the truncated mean.
bool criterion_10(std::string& line, std::vector<std::string>& detail) {
    bool ok = true;
    for (const double lambda : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const SurvivorLaw law(GrowthRate{lambda});  // tail_bound < 1e-12 < 1e-10
        const int n_max = law.n_max();
        const double eval_budget = (n_max + 1) * law.config().series_tol;

        std::vector<double> pmf(n_max + 1);
        double sum = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            pmf[n] = law.pmf(n);
            sum += pmf[n];
        }
        // Normalization: the partial sum plus the geometric tail covers 1 (the
        // per-term evaluation budget is the documented series tolerance), and
        // never exceeds 1 materially.
        if (!(sum + law.tail_bound() + eval_budget >= 1.0) || !(sum <= 1.0 + 1e-9)) {
            ok = false;
            detail.push_back(fmt("lambda=%g: normalization sum %.15f tail %.1e",
                                 lambda, sum, law.tail_bound()));
        }
        // pgf/pmf consistency on the stated s grid.
        for (const double s : {0.0, 0.25, 0.5, 0.75, 0.9}) {
            double series = 0.0;
            for (int n = n_max; n >= 0; --n) series = series * s + pmf[n];
            // series now equals sum s^n pmf(n) by Horner evaluation
            const double diff = std::fabs(law.pgf(s) - series);
            if (diff > law.tail_bound() + 1e-9) {
                ok = false;
                detail.push_back(fmt("lambda=%g s=%g: |pgf - partial sum| = %.2e",
                                     lambda, s, diff));
            }
        }
        // Mean by truncated sum at N=400 against lambda/2, within 1e-6.
        const SurvivorLaw wide(GrowthRate{lambda}, 400);
        double mean = 0.0;
        for (int n = 1; n <= 400; ++n) mean += n * wide.pmf(n);
        if (std::fabs(mean - lambda / 2.0) >= 1e-6) {
            ok = false;
            detail.push_back(fmt("lambda=%g: truncated mean %.9f vs %.9f", lambda,
                                 mean, lambda / 2.0));
        }
    }
    line = "survivor-law identities (normalization, pgf consistency, mean = "
           "lambda/2) at lambda in {0.5,1,2,5,10}";
    return ok;
}

using CriterionFn = bool (*)(std::string&, std::vector<std::string>&);

const struct {
    int id;
    CriterionFn fn;
} kCriteria[] = {
    {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
    {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
    {9, criterion_9}, {10, criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (const auto& c : kCriteria) ids.push_back(c.id);

    bool all_passed = true;
    for (const int id : ids) {
        const auto* entry = [&]() -> decltype(&kCriteria[0]) {
            for (const auto& c : kCriteria)
                if (c.id == id) return &c;
            return nullptr;
        }();
        if (entry == nullptr) {
            std::printf("[FAIL] criterion %d: unknown criterion id\n", id);
            all_passed = false;
            continue;
        }
        std::string line;
        std::vector<std::string> detail;
        const bool passed = entry->fn(line, detail);
        std::printf("[%s] criterion %d: %s\n", passed ? "PASS" : "FAIL", id,
                    line.c_str());
        for (const auto& d : detail) std::printf("       %s\n", d.c_str());
        std::fflush(stdout);
        if (!passed) all_passed = false;
    }
    return all_passed ? 0 : 1;
}
