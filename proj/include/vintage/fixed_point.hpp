#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "vintage/grid.hpp"

namespace vintage {

struct FixedPointDiagnostics {
    int iterations = 0;             // map applications performed
    std::vector<double> step_norms; // sup distance between consecutive iterates
    std::vector<double> ratios;     // step_norms[k] / step_norms[k-1]
    double contraction_estimate = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
};

struct FixedPointResult {
    AgeProfile profile;
    FixedPointDiagnostics diagnostics;
};

// Iterates x <- map(x) until the sup step drops to tol. Throws
// NonConvergenceError (carrying the diagnostics counters) when the budget
// runs out first.
FixedPointResult
fixed_point_iterate(const std::function<AgeProfile(const AgeProfile&)>& map,
                    AgeProfile x0, double tol = 1e-10, int max_iter = 200);

} // namespace vintage
