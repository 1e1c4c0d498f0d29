#include "catlab/survivor_law.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catlab/errors.hpp"
#include "catlab/special_functions.hpp"

namespace catlab {

void validate(const GrowthRate& rate) {
    if (!(rate.lambda > 0.0) || !std::isfinite(rate.lambda))
        throw DomainError("GrowthRate: require 0 < lambda < inf, got lambda=" +
                          std::to_string(rate.lambda));
}

SurvivorLaw::SurvivorLaw(GrowthRate rate, int n_max, SolverConfig cfg)
    : rate_(rate), n_max_(n_max), cfg_(cfg) {
    validate(rate_);
    if (n_max_ < 0) {
        const double q = rate_.lambda / (rate_.lambda + 1.0);
        // Smallest n with q^(n+1) < 1e-12.
        n_max_ = std::max(1, int(std::ceil(std::log(1e-12) / std::log(q))) - 1);
        while (std::pow(q, n_max_ + 1) >= 1e-12) ++n_max_;
    }
}

double SurvivorLaw::pmf(int n) const {
    if (n < 0) throw DomainError("SurvivorLaw::pmf: require n >= 0");
    const double lam = rate_.lambda;
    const double q = lam / (lam + 1.0);
    const double phi = lerch_phi({q, 1.0, double(n) + 1.0}, cfg_);
    return std::pow(q, n) * phi / (lam + 1.0);
}

double SurvivorLaw::pgf(double s) const {
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainError("SurvivorLaw::pgf: require s in [0,1], got s=" + std::to_string(s));
    const double u = rate_.lambda * (1.0 - s);
    if (1.0 - s < 1e-8) {
        // ln(1+u)/u = 1 - u/2 + u^2/3 - u^3/4 + u^4/5 - u^5/6 + O(u^6)
        return 1.0 + u * (-1.0 / 2 + u * (1.0 / 3 + u * (-1.0 / 4 + u * (1.0 / 5 - u / 6))));
    }
    return std::log1p(u) / u;
}

double SurvivorLaw::mean() const { return rate_.lambda / 2.0; }

double SurvivorLaw::tail_bound() const {
    const double q = rate_.lambda / (rate_.lambda + 1.0);
    return std::pow(q, n_max_ + 1);
}

}  // namespace catlab
