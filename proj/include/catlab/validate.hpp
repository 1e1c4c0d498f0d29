#pragma once
// Self-check suites behind `catlab validate`.  Quick runs the analytic
// identities and serialization contracts in a few seconds; full adds seeded
// Monte Carlo cross-validation against the closed forms and oracles and takes
// minutes.  Each check is named so a failure pinpoints the broken invariant.

#include <cstdint>
#include <string>
#include <vector>

namespace catlab {

struct CheckResult {
    std::string name;    // kebab-case identifier, stable across releases
    bool passed = false;
    std::string detail;  // measured value vs. bound, or the exception text
};

std::vector<CheckResult> run_quick_checks();
std::vector<CheckResult> run_full_checks(std::uint64_t seed);

}  // namespace catlab
