// calibration.hpp — exact binary type I error, critical-value search, p1 selection.
#pragma once
#include <optional>

#include "types.hpp"

namespace titesafe {

struct calibration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thresholds[n-1] = smallest event count triggering rejection after n evaluated
// patients; nullopt where r(n) > n (rejection infeasible at that look).
struct IntegerBoundary {
    std::vector<std::optional<int>> thresholds;
};

IntegerBoundary integer_thresholds(const MethodSpec& method, const TrialDesign& design, double c);

// Exact P(hit the boundary) for the Bernoulli(p) counting process, by survival DP.
double binary_alpha(const IntegerBoundary& bdry, double p);

struct BinaryOC {
    double reject_prob = 0.0;
    double e_events = 0.0;  // E[D1 at decision] (stop or completion of all N)
};
BinaryOC binary_oc(const IntegerBoundary& bdry, double p);

// Critical value with maximal attained binary alpha <= design.alpha.
StoppingRule calibrate(const MethodSpec& method, const TrialDesign& design);

// Smallest p1 > p0 (1e-4 grid) the exact binomial test detects with target power.
double choose_p1(const TrialDesign& design, double target_power);

}  // namespace titesafe
