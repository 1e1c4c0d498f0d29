#include "catlab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "catlab/errors.hpp"
#include "catlab/rng.hpp"
#include "catlab/samplers.hpp"

namespace catlab {

void validate(const SimConfig& cfg) {
    validate(cfg.rate);
    if (cfg.replicates < 1) throw DomainError("SimConfig: require replicates >= 1");
    if (!(cfg.horizon > 0.0)) throw DomainError("SimConfig: require horizon > 0");
    if (cfg.colony_cap < 1) throw DomainError("SimConfig: require colony_cap >= 1");
    if (cfg.model == ModelKind::TREE && cfg.d < 2)
        throw DomainError("SimConfig: TREE requires d >= 2");
    if ((cfg.model == ModelKind::FREE_GEOMETRIC || cfg.model == ModelKind::FREE_BINOMIAL) &&
        !(cfg.p > 0.0 && cfg.p < 1.0))
        throw DomainError("SimConfig: comparison models require p in (0,1)");
    if (cfg.individual_level &&
        (cfg.model == ModelKind::NO_DISPERSION))
        throw DomainError("SimConfig: individual_level applies to dispersion models only");
}

namespace {

// RNG stream domains within one replicate.
constexpr std::uint64_t kEventDomain = 0;  // event decisions
constexpr std::uint64_t kTimeDomain = 1;   // inter-event times

enum class Outcome : std::uint8_t { EXTINCT, CAP, HORIZON };

struct ReplicateResult {
    Outcome outcome;
    double time;  // extinction time when EXTINCT, else unused
};

int resolve_threads(std::int64_t replicates) {
    long n = 0;
    if (const char* env = std::getenv("CATLAB_THREADS")) {
        n = std::strtol(env, nullptr, 10);
        if (n < 0) n = 0;
    }
    if (n == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        n = hw == 0 ? 1 : long(hw);
    }
    return int(std::min<std::int64_t>(n, replicates));
}

// ---------------------------------------------------------- no dispersion

// Population of one colony: births at rate lambda, catastrophes at rate 1,
// so the total event rate is lambda+1 in every state and the jump chain moves
// up with probability lambda/(lambda+1), else to Uniform{0..X-1}.
ReplicateResult run_no_dispersion(const SimConfig& cfg, std::uint64_t replicate) {
    RngStream ev(cfg.seed, replicate, kEventDomain);
    RngStream tm(cfg.seed, replicate, kTimeDomain);
    const double lam = cfg.rate.lambda;
    const double p_birth = lam / (lam + 1.0);
    const double rate = lam + 1.0;
    std::int64_t x = 1;
    double t = 0.0;
    const bool timed = std::isfinite(cfg.horizon);
    for (;;) {
        if (x > cfg.colony_cap) return {Outcome::CAP, 0.0};
        const double dt = -std::log(tm.next_unit_open()) / rate;
        if (timed && t + dt > cfg.horizon) return {Outcome::HORIZON, 0.0};
        t += dt;
        if (ev.next_unit() < p_birth) {
            ++x;
        } else {
            x = std::int64_t(ev.next_below(std::uint64_t(x)));
            if (x == 0) return {Outcome::EXTINCT, t};
        }
    }
}

// ------------------------------------------------- colony-count processes

// Offspring draw per catastrophe for each colony-level model.  Kept as small
// structs so the per-model event loop below inlines the draw.
struct FreeDraw {
    const DiscreteCdfSampler* survivor;
    std::int64_t operator()(RngStream& rng) const { return survivor->draw(rng); }
};

struct TreeDraw {
    const DiscreteCdfSampler* survivor;
    int d;
    std::int64_t operator()(RngStream& rng) const {
        return draw_occupancy(rng, std::uint64_t(survivor->draw(rng)), d);
    }
};

struct GeometricDraw {
    double log_q;     // ln(lambda/(lambda+1))
    double log_1mp;   // ln(1-p)
    std::int64_t operator()(RngStream& rng) const {
        const std::uint64_t x = draw_colony_size_at_catastrophe(rng, log_q);
        const std::uint64_t w = draw_geometric0(rng, log_1mp);
        return w >= x ? 0 : std::int64_t(x - w);
    }
};

struct BinomialDraw {
    double log_q;
    double p;
    std::int64_t operator()(RngStream& rng) const {
        const std::uint64_t x = draw_colony_size_at_catastrophe(rng, log_q);
        return std::int64_t(draw_binomial(rng, x, p));
    }
};

// Colony-count event loop.  Each live colony carries an Exp(1) catastrophe
// clock, so with k colonies the next catastrophe is Exp(k) later and strikes
// an exchangeable colony; only the count matters.  Two passes when the
// horizon is infinite: the first ignores time (the bulk of the work in
// supercritical runs is cap-bound replicates, which need no clock), and
// extinct replicates are replayed with the identical event stream plus the
// time stream, which yields exactly the inline-timing result.
template <typename DrawOffspring>
ReplicateResult run_colony_counts(const SimConfig& cfg, std::uint64_t replicate,
                                  const DrawOffspring& draw) {
    const bool timed = std::isfinite(cfg.horizon);
    {
        RngStream ev(cfg.seed, replicate, kEventDomain);
        RngStream tm(cfg.seed, replicate, kTimeDomain);
        std::int64_t k = 1;
        double t = 0.0;
        for (;;) {
            if (k > cfg.colony_cap) return {Outcome::CAP, 0.0};
            if (timed) {
                const double dt = -std::log(tm.next_unit_open()) / double(k);
                if (t + dt > cfg.horizon) return {Outcome::HORIZON, 0.0};
                t += dt;
            }
            k += draw(ev) - 1;
            if (k == 0) break;
        }
        if (timed) return {Outcome::EXTINCT, t};
    }
    // Replay with timing (extinct, untimed first pass).
    RngStream ev(cfg.seed, replicate, kEventDomain);
    RngStream tm(cfg.seed, replicate, kTimeDomain);
    std::int64_t k = 1;
    double t = 0.0;
    for (;;) {
        t += -std::log(tm.next_unit_open()) / double(k);
        k += draw(ev) - 1;
        if (k == 0) return {Outcome::EXTINCT, t};
    }
}

// Individual-level differential oracle: every colony's size evolves by its
// own births (rate lambda) and catastrophe (rate 1); survivors of a
// catastrophe disperse exactly as in the colony-level mode.  dispersal_d = 0
// selects FREE (one colony per survivor).
ReplicateResult run_individual_level(const SimConfig& cfg, std::uint64_t replicate,
                                     int dispersal_d) {
    RngStream ev(cfg.seed, replicate, kEventDomain);
    RngStream tm(cfg.seed, replicate, kTimeDomain);
    const double lam = cfg.rate.lambda;
    const double p_birth = lam / (lam + 1.0);
    const bool timed = std::isfinite(cfg.horizon);
    std::vector<std::uint32_t> sizes{1};
    double t = 0.0;
    for (;;) {
        const std::int64_t k = std::int64_t(sizes.size());
        if (k == 0) return {Outcome::EXTINCT, t};
        if (k > cfg.colony_cap) return {Outcome::CAP, 0.0};
        // Each colony's total event rate is lambda+1 regardless of its size.
        const double dt = -std::log(tm.next_unit_open()) / (double(k) * (lam + 1.0));
        if (timed && t + dt > cfg.horizon) return {Outcome::HORIZON, 0.0};
        t += dt;
        const std::size_t c = std::size_t(ev.next_below(std::uint64_t(k)));
        if (ev.next_unit() < p_birth) {
            ++sizes[c];
        } else {
            const std::uint64_t survivors = ev.next_below(sizes[c]);
            sizes[c] = sizes.back();
            sizes.pop_back();
            const std::int64_t born = dispersal_d == 0
                                          ? std::int64_t(survivors)
                                          : draw_occupancy(ev, survivors, dispersal_d);
            for (std::int64_t i = 0; i < born; ++i) sizes.push_back(1);
        }
    }
}

// ------------------------------------------------------------- aggregation

template <typename RunReplicate>
SimSummary run_all(const SimConfig& cfg, const RunReplicate& run) {
    std::vector<ReplicateResult> results(std::size_t(cfg.replicates));
    const int nthreads = resolve_threads(cfg.replicates);
    if (nthreads <= 1) {
        for (std::int64_t r = 0; r < cfg.replicates; ++r)
            results[std::size_t(r)] = run(std::uint64_t(r));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(nthreads));
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t r = w; r < cfg.replicates; r += nthreads)
                    results[std::size_t(r)] = run(std::uint64_t(r));
            });
        }
        for (auto& th : pool) th.join();
    }

    // Deterministic aggregation in replicate order, independent of the thread
    // layout above.
    SimSummary s;
    for (const auto& rr : results) {
        switch (rr.outcome) {
            case Outcome::EXTINCT:
                ++s.extinct_count;
                s.extinction_times.push_back(rr.time);
                break;
            case Outcome::CAP:
                ++s.survived_count;
                break;
            case Outcome::HORIZON:
                ++s.survived_count;
                ++s.horizon_censored;
                break;
        }
    }
    s.extinction_frequency = double(s.extinct_count) / double(cfg.replicates);
    if (s.extinct_count > 0) {
        double sum = 0.0;
        for (const double t : s.extinction_times) sum += t;
        s.mean_extinction_time = sum / double(s.extinct_count);
    }
    return s;
}

}  // namespace

std::int64_t no_dispersion_jump(RngStream& rng, std::int64_t i, double lambda) {
    if (i <= 0) throw DomainError("no_dispersion_jump: require population > 0");
    if (rng.next_unit() < lambda / (lambda + 1.0)) return i + 1;
    return std::int64_t(rng.next_below(std::uint64_t(i)));
}

SimSummary simulate_no_dispersion(const SimConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::NO_DISPERSION)
        throw DomainError("simulate_no_dispersion: wrong model kind");
    return run_all(cfg, [&cfg](std::uint64_t r) { return run_no_dispersion(cfg, r); });
}

SimSummary simulate_tree(const SimConfig& cfg) {
    validate(cfg);
    if (cfg.model != ModelKind::TREE)
        throw DomainError("simulate_tree: wrong model kind");
    if (cfg.individual_level)
        return run_all(cfg, [&cfg](std::uint64_t r) {
            return run_individual_level(cfg, r, cfg.d);
        });
    const SurvivorLaw law(cfg.rate);
    const DiscreteCdfSampler sampler = make_survivor_sampler(law);
    const TreeDraw draw{&sampler, cfg.d};
    return run_all(cfg, [&](std::uint64_t r) { return run_colony_counts(cfg, r, draw); });
}

SimSummary simulate_free(const SimConfig& cfg) {
    validate(cfg);
    switch (cfg.model) {
        case ModelKind::FREE: {
            if (cfg.individual_level)
                return run_all(cfg, [&cfg](std::uint64_t r) {
                    return run_individual_level(cfg, r, 0);
                });
            const SurvivorLaw law(cfg.rate);
            const DiscreteCdfSampler sampler = make_survivor_sampler(law);
            const FreeDraw draw{&sampler};
            return run_all(cfg,
                           [&](std::uint64_t r) { return run_colony_counts(cfg, r, draw); });
        }
        case ModelKind::FREE_GEOMETRIC: {
            const double lam = cfg.rate.lambda;
            const GeometricDraw draw{std::log(lam / (lam + 1.0)), std::log1p(-cfg.p)};
            return run_all(cfg,
                           [&](std::uint64_t r) { return run_colony_counts(cfg, r, draw); });
        }
        case ModelKind::FREE_BINOMIAL: {
            const double lam = cfg.rate.lambda;
            const BinomialDraw draw{std::log(lam / (lam + 1.0)), cfg.p};
            return run_all(cfg,
                           [&](std::uint64_t r) { return run_colony_counts(cfg, r, draw); });
        }
        default:
            throw DomainError("simulate_free: wrong model kind");
    }
}

SimSummary estimate(const SimConfig& cfg) {
    validate(cfg);
    SimSummary s;
    switch (cfg.model) {
        case ModelKind::NO_DISPERSION:
            s = simulate_no_dispersion(cfg);
            break;
        case ModelKind::TREE:
            s = simulate_tree(cfg);
            break;
        default:
            s = simulate_free(cfg);
            break;
    }
    const double n = double(cfg.replicates);
    const double f = s.extinction_frequency;
    s.degenerate_ci = cfg.replicates < 2;
    s.ci_halfwidth_95 = s.degenerate_ci ? 0.0 : 1.96 * std::sqrt(f * (1.0 - f) / n);
    if (s.extinct_count > 1) {
        double ss = 0.0;
        for (const double t : s.extinction_times) {
            const double d = t - s.mean_extinction_time;
            ss += d * d;
        }
        const double var = ss / double(s.extinct_count - 1);
        s.mean_time_stderr = std::sqrt(var / double(s.extinct_count));
    }
    return s;
}

}  // namespace catlab
