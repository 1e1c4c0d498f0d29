#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "catlab/survivor_law.hpp"

namespace catlab {

enum class ModelKind {
    NO_DISPERSION,    // one colony, survivors stay together
    TREE,             // survivors disperse over d child vertices
    FREE,             // every survivor founds a new colony
    FREE_GEOMETRIC,   // unrestricted dispersion, geometric reduction law
    FREE_BINOMIAL,    // unrestricted dispersion, binomial reduction law
};

struct SimConfig {
    std::uint64_t seed = 42;
    std::int64_t replicates = 1;
    // Simulated-time cap per replicate; +infinity means no time cap (the
    // colony cap still bounds every replicate).
    double horizon = std::numeric_limits<double>::infinity();
    std::int64_t colony_cap = 100000;  // population cap for NO_DISPERSION
    ModelKind model = ModelKind::NO_DISPERSION;
    GrowthRate rate{1.0};
    int d = 2;        // TREE only
    double p = 0.5;   // FREE_GEOMETRIC / FREE_BINOMIAL only
    // Differential-testing mode for TREE/FREE: simulate every colony's
    // internal growth individually instead of drawing the survivor count from
    // its law.  Slower; must agree statistically with the default mode.
    bool individual_level = false;
};

// Throws DomainError on an invalid configuration.
void validate(const SimConfig& cfg);

struct SimSummary {
    std::int64_t extinct_count = 0;
    std::int64_t survived_count = 0;    // hit the cap or the horizon alive
    std::int64_t horizon_censored = 0;  // subset of survived_count that hit the horizon
    // Extinction times of extinct replicates, in replicate order.
    std::vector<double> extinction_times;
    double mean_extinction_time = 0.0;  // over extinct replicates; 0 if none
    double extinction_frequency = 0.0;
    double ci_halfwidth_95 = 0.0;       // normal-approximation CI for the frequency
    double mean_time_stderr = 0.0;      // standard error of mean_extinction_time
    bool degenerate_ci = false;         // replicates < 2: the CI is meaningless
};

// The three simulators.  Replicates are independent; replicate r uses its own
// counter-based streams derived from (seed, r), so results are identical for
// a given (seed, config) regardless of thread count or scheduling.  The
// environment variable CATLAB_THREADS caps worker threads (0 or unset: auto).
SimSummary simulate_no_dispersion(const SimConfig& cfg);
SimSummary simulate_tree(const SimConfig& cfg);
SimSummary simulate_free(const SimConfig& cfg);

// Dispatch wrapper: validates, runs the right simulator, attaches the CI and
// standard-error fields.
SimSummary estimate(const SimConfig& cfg);

// One embedded-chain step of the no-dispersion model from population i > 0,
// exposed for the jump-chain cross-check: returns the next population.
std::int64_t no_dispersion_jump(class RngStream& rng, std::int64_t i, double lambda);

}  // namespace catlab
