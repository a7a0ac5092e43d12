#include "vintage/fixed_point.hpp"

#include <utility>

#include "vintage/errors.hpp"

namespace vintage {

FixedPointResult
fixed_point_iterate(const std::function<AgeProfile(const AgeProfile&)>& map,
                    AgeProfile x0, double tol, int max_iter) {
    FixedPointResult res;
    res.profile = std::move(x0);
    auto& diag = res.diagnostics;

    for (int k = 0; k < max_iter; ++k) {
        AgeProfile next = map(res.profile);
        double step = sup_distance(next, res.profile);
        ++diag.iterations;
        if (!diag.step_norms.empty() && diag.step_norms.back() > 0.0) {
            diag.ratios.push_back(step / diag.step_norms.back());
            diag.contraction_estimate = diag.ratios.back();
        }
        diag.step_norms.push_back(step);
        res.profile = std::move(next);
        if (step <= tol) {
            diag.converged = true;
            return res;
        }
    }
    throw NonConvergenceError("fixed_point_iterate: no convergence within budget",
                              diag.iterations,
                              diag.step_norms.empty() ? 0.0 : diag.step_norms.back(),
                              diag.contraction_estimate);
}

} // namespace vintage
