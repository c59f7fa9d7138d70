#pragma once

// Embedded cross-path agreement suite run by `feedcool selfcheck`.
// The integration and exact-occupancy routines are injectable so that the
// harness itself can be mutation-tested.

#include <functional>
#include <string>
#include <vector>

#include "feedcool/occupancy.hpp"
#include "feedcool/rational_integral.hpp"

namespace feedcool {

struct SelfcheckHooks {
    std::function<double(const integral::RationalIntegrand&)> integrate;
    std::function<OccupancyBreakdown(const SystemParams&, const FeedbackParams&)> exact;
};

enum class Mutation {
    none,
    sign_flip,  // flips the (-1)^{n+1} factor of the rational integral
    s_m_shift,  // adds a spurious beta^2 sigma term to S_m
};

SelfcheckHooks make_hooks(Mutation m = Mutation::none);

struct CheckResult {
    std::string name;
    bool passed;
    double worst;       // worst observed deviation (relative unless noted)
    double tolerance;
    std::string detail;
};

std::vector<CheckResult> run_selfcheck(const SelfcheckHooks& hooks);

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace feedcool
