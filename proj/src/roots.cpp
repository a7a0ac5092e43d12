#include "vintage/roots.hpp"

#include <cmath>

#include "vintage/errors.hpp"

namespace vintage {

namespace {

double eval_checked(const std::function<double(double)>& theta, double x) {
    double v = theta(x);
    if (std::isnan(v))
        throw EvaluationError("root search: function evaluated to NaN");
    return v;
}

} // namespace

double refine_root_increasing(const std::function<double(double)>& theta,
                              double lo, double hi, const RootOptions& opts) {
    double flo = eval_checked(theta, lo);
    double fhi = eval_checked(theta, hi);
    if (std::abs(flo) <= opts.tol)
        return lo;
    if (std::abs(fhi) <= opts.tol)
        return hi;
    if (flo > 0.0 || fhi < 0.0)
        throw BracketError("refine_root_increasing: endpoints do not bracket a root");

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        double x;
        bool use_secant = (iter % 2 == 0) && std::isfinite(flo) &&
                          std::isfinite(fhi) && fhi != flo;
        if (use_secant) {
            x = hi - fhi * (hi - lo) / (fhi - flo);
            if (!(x > lo && x < hi) || !std::isfinite(x))
                x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
        }
        if (x <= lo || x >= hi) // interval exhausted by rounding
            x = std::nextafter(lo, hi);
        double f = eval_checked(theta, x);
        if (std::abs(f) <= opts.tol)
            return x;
        if (f < 0.0) {
            lo = x;
            flo = f;
        } else {
            hi = x;
            fhi = f;
        }
        if (lo == hi || std::nextafter(lo, hi) == hi) {
            // Nothing left between the endpoints; take the closer side.
            double cl = std::isfinite(flo) ? std::abs(flo) : HUGE_VAL;
            double ch = std::isfinite(fhi) ? std::abs(fhi) : HUGE_VAL;
            double best = cl <= ch ? lo : hi;
            double fb = cl <= ch ? flo : fhi;
            if (std::abs(fb) <= opts.tol)
                return best;
            throw NonConvergenceError(
                "refine_root_increasing: bracket collapsed above tolerance", iter,
                std::abs(fb), NAN);
        }
    }
    throw NonConvergenceError("refine_root_increasing: iteration budget exhausted",
                              opts.max_iterations, hi - lo, NAN);
}

double find_root_increasing(const std::function<double(double)>& theta,
                            const RootOptions& opts) {
    double f0 = eval_checked(theta, 0.0);
    if (std::abs(f0) <= opts.tol)
        return 0.0;
    if (f0 > 0.0)
        throw NoNonnegativeRootError(
            "find_root_increasing: function positive at zero");

    double lo = 0.0;
    double hi = 1.0;
    double fhi = eval_checked(theta, hi);
    int doublings = 0;
    while (fhi < 0.0) {
        if (++doublings > opts.max_doublings)
            throw BracketError("find_root_increasing: no sign change found while "
                               "expanding the bracket");
        lo = hi;
        hi *= 2.0;
        fhi = eval_checked(theta, hi);
    }
    if (std::abs(fhi) <= opts.tol)
        return hi;
    return refine_root_increasing(theta, lo, hi, opts);
}

double find_root_increasing(const std::function<double(double)>& theta,
                            double tol) {
    RootOptions opts;
    opts.tol = tol;
    return find_root_increasing(theta, opts);
}

double find_root_increasing_whole_line(const std::function<double(double)>& theta,
                                       const RootOptions& opts) {
    double f0 = eval_checked(theta, 0.0);
    if (std::abs(f0) <= opts.tol)
        return 0.0;
    if (f0 < 0.0)
        return find_root_increasing(theta, opts);

    double hi = 0.0;
    double lo = -1.0;
    double flo = eval_checked(theta, lo);
    int doublings = 0;
    while (flo > 0.0) {
        if (++doublings > opts.max_doublings)
            throw BracketError("find_root_increasing_whole_line: no sign change "
                               "found while expanding the bracket");
        hi = lo;
        lo *= 2.0;
        flo = eval_checked(theta, lo);
    }
    if (std::abs(flo) <= opts.tol)
        return lo;
    return refine_root_increasing(theta, lo, hi, opts);
}

} // namespace vintage
