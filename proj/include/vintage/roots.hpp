#pragma once

#include <functional>

namespace vintage {

struct RootOptions {
    double tol = 1e-12;       // accept x once |theta(x)| <= tol
    int max_doublings = 128;  // bracket expansion budget
    int max_iterations = 256; // refinement budget inside a bracket
};

// Root of a strictly increasing scalar function on [0, inf).
//
// theta(0) > tol throws NoNonnegativeRootError; |theta(0)| <= tol returns 0.
// Otherwise the upper end is found by doubling from 1 and the root is
// refined by interleaved false-position and bisection steps. theta may
// return +-inf (the sign is used); NaN throws EvaluationError.
double find_root_increasing(const std::function<double(double)>& theta,
                            const RootOptions& opts);
double find_root_increasing(const std::function<double(double)>& theta,
                            double tol = 1e-12);

// Refinement on a known bracket [lo, hi] with theta(lo) <= 0 <= theta(hi).
double refine_root_increasing(const std::function<double(double)>& theta,
                              double lo, double hi, const RootOptions& opts);

// Doubles lo downward from -1 until theta(lo) <= 0, then refines on
// [lo, hi]. Used when no nonnegative root exists but the scalar equation
// still has a (then negative) solution.
double find_root_increasing_whole_line(const std::function<double(double)>& theta,
                                       const RootOptions& opts);

} // namespace vintage
