// catlab: colony-growth-under-catastrophes toolkit.
//
// Subcommands: table1 (critical rates), psi (extinction probabilities), tau
// (mean extinction times), figure-data (comparison curves + crossover),
// simulate (seeded Monte Carlo), validate (self-check suites).
//
// Exit codes: 0 success, 2 usage/validation error, 3 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "catlab/analytic.hpp"
#include "catlab/errors.hpp"
#include "catlab/monte_carlo.hpp"
#include "catlab/output.hpp"
#include "catlab/validate.hpp"

namespace {

using catlab::Cell;
using catlab::Table;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw catlab::DomainError("cannot open output file: " + out_path);
    f << text;
}

std::string render(const std::string& command,
                   const std::vector<std::pair<std::string, Cell>>& params, const Table& t,
                   const std::string& format) {
    return format == "json" ? catlab::to_json(command, params, t) : catlab::to_csv(t);
}

// ------------------------------------------------------------------ table1

struct Table1Args {
    std::vector<int> ds;
    std::string format = "csv";
    std::string out;
};

int cmd_table1(const Table1Args& a) {
    const catlab::SolverConfig cfg;
    std::vector<int> ds = a.ds;
    if (ds.empty()) ds = {2, 3, 5, 7, 10, 20, 50, 100, 200};
    Table t;
    t.columns = {"d", "critical_lambda", "critical_lambda_3dp"};
    std::string d_list;
    for (const int d : ds) {
        if (d < 2)
            throw catlab::DomainError("table1: every --d must be >= 2 (got " +
                                      std::to_string(d) + ")");
        const double lam = catlab::critical_lambda(d, cfg);
        t.rows.push_back(
            {std::int64_t(d), lam, std::round(lam * 1000.0) / 1000.0});
        if (!d_list.empty()) d_list += ',';
        d_list += std::to_string(d);
    }
    emit(a.out, render("table1", {{"d_list", d_list}}, t, a.format));
    return 0;
}

// --------------------------------------------------------------------- psi

struct PsiArgs {
    std::string model;
    double lambda = 0.0;
    int d = 2;
    double p = 0.5;
    bool d_given = false, p_given = false;
    std::string format = "csv";
    std::string out;
};

int cmd_psi(const PsiArgs& a) {
    const catlab::SolverConfig cfg;
    const catlab::GrowthRate rate{a.lambda};
    Table t;
    std::vector<std::pair<std::string, Cell>> params{{"model", a.model},
                                                     {"lambda", a.lambda}};
    if (a.model == "tree") {
        if (a.p_given) throw catlab::DomainError("psi: --p applies to geom/binom only");
        const catlab::TreeParams tp{a.d, rate};
        const bool closed = a.d == 2 || a.d == 3;
        const double psi =
            closed ? catlab::psi_tree_closed(tp) : catlab::psi_tree_general(tp, cfg);
        t.columns = {"model", "lambda", "d", "method", "psi"};
        t.rows.push_back({a.model, a.lambda, std::int64_t(a.d),
                          std::string(closed ? "closed-form" : "fixed-point"), psi});
        params.emplace_back("d", std::int64_t(a.d));
    } else if (a.model == "free") {
        if (a.d_given || a.p_given)
            throw catlab::DomainError("psi: --d/--p do not apply to model free");
        t.columns = {"model", "lambda", "method", "psi"};
        t.rows.push_back(
            {a.model, a.lambda, std::string("fixed-point"), catlab::psi_free(rate, cfg)});
    } else {  // geom | binom
        if (a.d_given) throw catlab::DomainError("psi: --d applies to model tree only");
        if (!a.p_given)
            throw catlab::DomainError("psi: --p is required for model " + a.model);
        const double psi = a.model == "geom" ? catlab::psi_geometric(rate, a.p)
                                             : catlab::psi_binomial(rate, a.p);
        t.columns = {"model", "lambda", "p", "method", "psi"};
        t.rows.push_back({a.model, a.lambda, a.p, std::string("closed-form"), psi});
        params.emplace_back("p", a.p);
    }
    emit(a.out, render("psi", params, t, a.format));
    return 0;
}

// --------------------------------------------------------------------- tau

struct TauArgs {
    std::string model;
    double lambda = 0.0;
    int d = 2;
    std::string format = "csv";
    std::string out;
};

int cmd_tau(const TauArgs& a) {
    const catlab::SolverConfig cfg;
    Table t;
    std::vector<std::pair<std::string, Cell>> params{{"model", a.model},
                                                     {"lambda", a.lambda}};
    catlab::ExtendedTime et = catlab::ExtendedTime::infinite();
    if (a.model == "tree") {
        if (a.d != 2 && a.d != 3)
            throw catlab::DomainError(
                "tau: closed-form mean time exists for --d 2 or 3 only");
        et = catlab::mean_tau_tree({a.d, {a.lambda}}, cfg);
        t.columns = {"model", "lambda", "d", "mean_extinction_time"};
        t.rows.push_back({a.model, a.lambda, std::int64_t(a.d),
                          et.is_infinite() ? std::numeric_limits<double>::infinity()
                                           : et.value()});
        params.emplace_back("d", std::int64_t(a.d));
    } else {  // free
        et = catlab::mean_tau_free({a.lambda}, cfg);
        t.columns = {"model", "lambda", "mean_extinction_time"};
        t.rows.push_back({a.model, a.lambda,
                          et.is_infinite() ? std::numeric_limits<double>::infinity()
                                           : et.value()});
    }
    emit(a.out, render("tau", params, t, a.format));
    return 0;
}

// ------------------------------------------------------------- figure-data

struct FigureArgs {
    int figure = 0;
    double lambda_min = 0.25;
    double lambda_max = 12.0;
    double lambda_step = 0.25;
    std::vector<double> ps;
    std::string format = "csv";
    std::string out;
};

int cmd_figure_data(const FigureArgs& a) {
    const catlab::SolverConfig cfg;
    if (!(a.lambda_min > 0.0) || !(a.lambda_step > 0.0) || a.lambda_max < a.lambda_min)
        throw catlab::DomainError("figure-data: need 0 < --lambda-min <= --lambda-max and a positive --lambda-step");
    if (a.lambda_max > cfg.lambda_max)
        throw catlab::DomainError("figure-data: --lambda-max exceeds the supported range");
    std::vector<double> ps = a.ps.empty() ? std::vector<double>{0.25, 0.5} : a.ps;
    for (const double p : ps)
        if (!(p > 0.0 && p < 1.0))
            throw catlab::DomainError("figure-data: every --p must lie in (0,1)");

    const bool geometric = a.figure == 1;
    Table t;
    t.columns = {"record", "lambda", "psi_free"};
    for (const double p : ps)
        t.columns.push_back((geometric ? "psi_geometric_p" : "psi_binomial_p") +
                            catlab::format_cell(Cell{p}));
    if (!geometric) {
        t.columns.push_back("p");
        t.columns.push_back("crossover_lambda");
    }

    const int steps =
        int(std::floor((a.lambda_max - a.lambda_min) / a.lambda_step + 1e-9)) + 1;
    for (int i = 0; i < steps; ++i) {
        const double lam = a.lambda_min + double(i) * a.lambda_step;
        std::vector<Cell> row{std::string("grid"), lam, catlab::psi_free({lam}, cfg)};
        for (const double p : ps)
            row.emplace_back(geometric ? catlab::psi_geometric({lam}, p)
                                       : catlab::psi_binomial({lam}, p));
        if (!geometric) {
            row.emplace_back(std::string(""));
            row.emplace_back(std::string(""));
        }
        t.rows.push_back(std::move(row));
    }
    if (!geometric) {
        for (const double p : ps) {
            if (!(p < 1.0 / 3.0)) continue;  // no crossover: uniform is always more severe
            std::vector<Cell> row{std::string("crossover"), std::string(""),
                                  std::string("")};
            for (std::size_t k = 0; k < ps.size(); ++k) row.emplace_back(std::string(""));
            row.emplace_back(p);
            row.emplace_back(catlab::crossover_lambda(p, cfg));
            t.rows.push_back(std::move(row));
        }
    }

    std::vector<std::pair<std::string, Cell>> params{
        {"figure", std::int64_t(a.figure)},   {"lambda_min", a.lambda_min},
        {"lambda_max", a.lambda_max},         {"lambda_step", a.lambda_step}};
    emit(a.out, render("figure-data", params, t, a.format));

    if (geometric) {
        // Uniform catastrophes are at least as severe as geometric ones at
        // every rate; emitting data violating that means a computation broke.
        for (const auto& row : t.rows) {
            const double psi_star = std::get<double>(row[2]);
            for (std::size_t c = 3; c < row.size(); ++c)
                if (psi_star < std::get<double>(row[c]) - 1e-12)
                    throw catlab::InvariantViolation(
                        "figure-data: psi_free < psi_geometric at lambda = " +
                        catlab::format_cell(row[1]));
        }
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string model;
    double lambda = 0.0;
    int d = 2;
    double p = 0.5;
    bool d_given = false, p_given = false;
    std::uint64_t seed = 42;
    std::int64_t replicates = 10000;
    double horizon = std::numeric_limits<double>::infinity();
    std::int64_t cap = 100000;
    bool individual_level = false;
    std::string times_out;
    std::string format = "json";
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    catlab::SimConfig c;
    if (a.model == "no-dispersion")
        c.model = catlab::ModelKind::NO_DISPERSION;
    else if (a.model == "tree")
        c.model = catlab::ModelKind::TREE;
    else if (a.model == "free")
        c.model = catlab::ModelKind::FREE;
    else if (a.model == "free-geometric")
        c.model = catlab::ModelKind::FREE_GEOMETRIC;
    else
        c.model = catlab::ModelKind::FREE_BINOMIAL;
    c.seed = a.seed;
    c.replicates = a.replicates;
    c.horizon = a.horizon;
    c.colony_cap = a.cap;
    c.rate = {a.lambda};
    c.d = a.d;
    c.p = a.p;
    c.individual_level = a.individual_level;

    const bool uses_d = c.model == catlab::ModelKind::TREE;
    const bool uses_p = c.model == catlab::ModelKind::FREE_GEOMETRIC ||
                        c.model == catlab::ModelKind::FREE_BINOMIAL;
    if (a.d_given && !uses_d)
        throw catlab::DomainError("simulate: --d applies to model tree only");
    if (a.p_given && !uses_p)
        throw catlab::DomainError("simulate: --p applies to the free-geometric/free-binomial models only");

    const catlab::SimSummary s = catlab::estimate(c);

    std::vector<std::pair<std::string, Cell>> params{{"model", a.model},
                                                     {"lambda", a.lambda}};
    if (uses_d) params.emplace_back("d", std::int64_t(a.d));
    if (uses_p) params.emplace_back("p", a.p);
    params.emplace_back("seed", std::int64_t(a.seed));
    params.emplace_back("replicates", a.replicates);
    params.emplace_back("horizon", a.horizon);
    params.emplace_back("cap", a.cap);
    if (a.individual_level) params.emplace_back("individual_level", std::int64_t(1));

    Table t;
    t.columns = {"extinct_count",        "survived_count", "horizon_censored",
                 "extinction_frequency", "ci_halfwidth_95", "degenerate_ci"};
    std::vector<Cell> row{s.extinct_count,        s.survived_count,
                          s.horizon_censored,     s.extinction_frequency,
                          s.ci_halfwidth_95,      std::int64_t(s.degenerate_ci ? 1 : 0)};
    // The mean over extinct replicates is undefined when none went extinct;
    // the columns are omitted rather than filled with a placeholder.
    if (s.extinct_count > 0) {
        t.columns.push_back("mean_extinction_time");
        t.columns.push_back("mean_time_stderr");
        row.emplace_back(s.mean_extinction_time);
        row.emplace_back(s.mean_time_stderr);
    }
    t.rows.push_back(std::move(row));
    emit(a.out, render("simulate", params, t, a.format));

    if (!a.times_out.empty()) {
        Table times;
        times.columns = {"replicate_rank", "extinction_time"};
        for (std::size_t i = 0; i < s.extinction_times.size(); ++i)
            times.rows.push_back({std::int64_t(i), s.extinction_times[i]});
        emit(a.times_out, catlab::to_csv(times));
    }
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
    std::string level = "quick";
    std::uint64_t seed = 42;
};

int cmd_validate(const ValidateArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<catlab::CheckResult> results =
        a.level == "full" ? catlab::run_full_checks(a.seed) : catlab::run_quick_checks();
    int failed = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        std::printf("[%s] %-34s %s\n", r.passed ? " ok " : "FAIL", r.name.c_str(),
                    r.detail.c_str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (failed == 0) {
        std::printf("all %zu checks passed (%s, seed %llu, %.1f s)\n", results.size(),
                    a.level.c_str(), (unsigned long long)a.seed, secs);
        return 0;
    }
    std::printf("%d of %zu checks FAILED (%s, seed %llu, %.1f s)\n", failed, results.size(),
                a.level.c_str(), (unsigned long long)a.seed, secs);
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "catlab: extinction probabilities, mean extinction times, and seeded "
        "simulation for colony growth under uniform catastrophes"};
    app.require_subcommand(1);

    Table1Args t1a;
    CLI::App* t1 = app.add_subcommand(
        "table1", "Critical growth rates lambda_d (full precision + 3 decimals)");
    t1->add_option("--d", t1a.ds, "Child-vertex counts (default: 2 3 5 7 10 20 50 100 200)");
    t1->add_option("--format", t1a.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    t1->add_option("--out", t1a.out, "Output path (default: stdout)");

    PsiArgs pa;
    CLI::App* ps = app.add_subcommand("psi", "Extinction probability for one model");
    ps->add_option("--model", pa.model, "tree | free | geom | binom")
        ->required()
        ->check(CLI::IsMember({"tree", "free", "geom", "binom"}));
    ps->add_option("--lambda", pa.lambda, "Growth rate, > 0")->required();
    ps->add_option("--d", pa.d, "Child-vertex count (tree)");
    ps->add_option("--p", pa.p, "Reduction parameter (geom/binom)");
    ps->add_option("--format", pa.format)->check(CLI::IsMember({"csv", "json"}));
    ps->add_option("--out", pa.out);

    TauArgs ta;
    CLI::App* tu = app.add_subcommand("tau", "Mean extinction time (emits inf at the boundary)");
    tu->add_option("--model", ta.model, "tree | free")
        ->required()
        ->check(CLI::IsMember({"tree", "free"}));
    tu->add_option("--lambda", ta.lambda, "Growth rate, > 0")->required();
    tu->add_option("--d", ta.d, "Child-vertex count, 2 or 3 (tree)");
    tu->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json"}));
    tu->add_option("--out", ta.out);

    FigureArgs fa;
    CLI::App* fd = app.add_subcommand(
        "figure-data", "Comparison-curve grids (1: vs geometric, 2: vs binomial + crossover)");
    fd->add_option("--figure", fa.figure, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    fd->add_option("--lambda-min", fa.lambda_min, "Grid start (> 0)");
    fd->add_option("--lambda-max", fa.lambda_max, "Grid end");
    fd->add_option("--lambda-step", fa.lambda_step, "Grid step");
    fd->add_option("--p", fa.ps, "Reduction parameters (default: 0.25 0.5)");
    fd->add_option("--format", fa.format)->check(CLI::IsMember({"csv", "json"}));
    fd->add_option("--out", fa.out);

    SimulateArgs sa;
    CLI::App* sim = app.add_subcommand("simulate", "Seeded Monte Carlo replicates");
    sim->add_option("--model", sa.model,
                    "no-dispersion | tree | free | free-geometric | free-binomial")
        ->required()
        ->check(CLI::IsMember(
            {"no-dispersion", "tree", "free", "free-geometric", "free-binomial"}));
    sim->add_option("--lambda", sa.lambda, "Growth rate, > 0")->required();
    sim->add_option("--d", sa.d, "Child-vertex count (tree)");
    sim->add_option("--p", sa.p, "Reduction parameter (free-geometric/free-binomial)");
    sim->add_option("--seed", sa.seed, "Master seed (default 42)");
    sim->add_option("--replicates", sa.replicates, "Replicate count (default 10000)");
    sim->add_option("--horizon", sa.horizon, "Simulated-time cap per replicate (default inf)");
    sim->add_option("--cap", sa.cap, "Colony/population cap (default 100000)");
    sim->add_flag("--individual-level", sa.individual_level,
                  "Simulate every colony's internal growth (differential-testing mode)");
    sim->add_option("--times-out", sa.times_out,
                    "Also write per-replicate extinction times as CSV to this path");
    sim->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--out", sa.out);

    ValidateArgs va;
    CLI::App* val = app.add_subcommand("validate", "Run the self-check suites");
    val->add_option("--level", va.level, "quick (seconds) | full (minutes)")
        ->check(CLI::IsMember({"quick", "full"}));
    val->add_option("--seed", va.seed, "Seed for the full-level Monte Carlo checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    pa.d_given = ps->count("--d") > 0;
    pa.p_given = ps->count("--p") > 0;
    sa.d_given = sim->count("--d") > 0;
    sa.p_given = sim->count("--p") > 0;

    try {
        if (t1->parsed()) return cmd_table1(t1a);
        if (ps->parsed()) return cmd_psi(pa);
        if (tu->parsed()) return cmd_tau(ta);
        if (fd->parsed()) return cmd_figure_data(fa);
        if (sim->parsed()) return cmd_simulate(sa);
        if (val->parsed()) return cmd_validate(va);
    } catch (const catlab::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
