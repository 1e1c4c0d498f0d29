#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "catlab/rng.hpp"
#include "catlab/survivor_law.hpp"

namespace catlab {

// Inversion sampler for a discrete law on {0, 1, 2, ...} given its cdf table,
// accelerated by a 256-bucket guide table.  The table must extend far enough
// that the remaining tail is below 2^-53 (one ulp of the uniform draw); draws
// beyond the table clamp to its last entry, which is unreachable for any
// representable uniform once that holds.
class DiscreteCdfSampler {
public:
    explicit DiscreteCdfSampler(std::vector<double> cdf) : cdf_(std::move(cdf)) {
        guide_.resize(257, 0);
        std::size_t idx = 0;
        for (int b = 0; b <= 256; ++b) {
            const double threshold = double(b) / 256.0;
            while (idx + 1 < cdf_.size() && cdf_[idx] < threshold) ++idx;
            guide_[b] = idx;
        }
    }

    int draw(RngStream& rng) const {
        const double u = rng.next_unit();
        std::size_t i = guide_[std::size_t(u * 256.0)];
        // Walk back in the rare case the guide overshoots the bucket start.
        while (i > 0 && cdf_[i - 1] >= u) --i;
        while (u >= cdf_[i] && i + 1 < cdf_.size()) ++i;
        return int(i);
    }

    const std::vector<double>& cdf() const { return cdf_; }

private:
    std::vector<double> cdf_;
    std::vector<std::size_t> guide_;
};

// Cdf table of the survivor law N, long enough that the geometric tail bound
// q^(n+1) drops below 2^-53.
inline DiscreteCdfSampler make_survivor_sampler(const SurvivorLaw& law) {
    const double q = law.lambda() / (law.lambda() + 1.0);
    std::vector<double> cdf;
    double cum = 0.0;
    for (int n = 0;; ++n) {
        cum += law.pmf(n);
        cdf.push_back(std::min(cum, 1.0));
        if (std::pow(q, n + 1) < 0x1.0p-53 && n >= 1) break;
    }
    cdf.back() = 1.0;
    return DiscreteCdfSampler(std::move(cdf));
}

// Colony size at its catastrophe time: geometric on {1, 2, ...} with
// P(X = j) = (1/(lambda+1)) (lambda/(lambda+1))^(j-1) - the Poisson-growth
// population observed at an independent Exp(1) time.
inline std::uint64_t draw_colony_size_at_catastrophe(RngStream& rng, double log_q) {
    // Inversion: X = 1 + floor(ln(U)/ln(q)), q = lambda/(lambda+1).
    return 1 + std::uint64_t(std::log(rng.next_unit_open()) / log_q);
}

// Geometric on {0, 1, 2, ...} with P(W = w) = p (1-p)^w, by inversion.
inline std::uint64_t draw_geometric0(RngStream& rng, double log_1mp) {
    return std::uint64_t(std::log(rng.next_unit_open()) / log_1mp);
}

// Binomial(n, p) by Bernoulli counting, with an exact 64-bit popcount fast
// path at p = 1/2.
inline std::uint64_t draw_binomial(RngStream& rng, std::uint64_t n, double p) {
    std::uint64_t k = 0;
    if (p == 0.5) {
        while (n >= 64) {
            k += std::uint64_t(__builtin_popcountll(rng.next_u64()));
            n -= 64;
        }
        if (n > 0)
            k += std::uint64_t(__builtin_popcountll(rng.next_u64() >> (64 - n)));
        return k;
    }
    for (std::uint64_t i = 0; i < n; ++i)
        if (rng.next_unit() < p) ++k;
    return k;
}

// Number of distinct child vertices hit when n survivors each pick uniformly
// among d children.  For d = 2 the closed form P(occupancy = 1 | n) = 2^(1-n)
// needs a single uniform; the general path marks children in a bitmask (or a
// small array for d > 64) and stops early once all d are hit.
inline int draw_occupancy(RngStream& rng, std::uint64_t n, int d) {
    if (n == 0) return 0;
    if (n == 1) return 1;
    if (d == 2) {
        if (n >= 54) return 2;  // P(both at the same child) = 2^(1-n) < 2^-53
        return rng.next_unit() < std::ldexp(1.0, 1 - int(n)) ? 1 : 2;
    }
    if (d <= 64) {
        std::uint64_t mask = 0;
        int count = 0;
        const std::uint64_t full = (d == 64) ? ~0ull : ((1ull << d) - 1);
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t bit = 1ull << rng.next_below(std::uint64_t(d));
            if (!(mask & bit)) {
                mask |= bit;
                if (++count == d) return d;
            }
            if (mask == full) return d;
        }
        return count;
    }
    std::vector<char> seen(std::size_t(d), 0);
    int count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto c = rng.next_below(std::uint64_t(d));
        if (!seen[c]) {
            seen[c] = 1;
            if (++count == d) return d;
        }
    }
    return count;
}

}  // namespace catlab
