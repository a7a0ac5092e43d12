#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vintage/equilibrium.hpp"
#include "vintage/grid.hpp"
#include "vintage/model.hpp"

namespace vintage {

struct PeakInfo {
    double s_peak = 0.0;
    int index = 0;
    bool single_peaked = false; // nondecreasing up to the max, nonincreasing after
};

PeakInfo peak_age(const AgeProfile& values, const AgeGrid& grid);

struct SStarResult {
    double value = 0.0;
    bool regime_ok = false; // formula proven for purely quadratic costs only
    std::string warning;
};

// Analytic peak age of the stationary profile in the purely quadratic
// regime (constant productivity, q identically zero).
SStarResult s_star_analytic(const ModelParams& params, const Cost& cost);

struct FigureSeries {
    int figure = 0;
    std::string label; // column name of the value series
    std::vector<double> s;
    std::vector<double> values;
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Stationary profiles behind the four reference plots: 1 capital, 2
// maintenance control, 3 and 4 capital again under a productivity
// override (defaults 12 and 24).
FigureSeries reproduce_figure(int figure, const ModelParams& params,
                              const Revenue& rev, const Cost& cost,
                              const AgeGrid& grid,
                              std::optional<double> alpha_override = {});

enum class ProfileOrder { Greater, Less, Equal, Mixed };

struct SweepResult {
    std::string param;
    std::vector<double> values;
    std::vector<std::string> status; // "ok" or the failure reason
    std::vector<std::optional<EquilibriumSolution>> solutions;
    // pairwise node-by-node comparison of the solved profiles
    std::vector<std::vector<ProfileOrder>> order;
};

// Re-solves the equilibrium across a list of values of one scalar
// parameter. Values run concurrently; results are aggregated in input
// order, so the output is deterministic. A failure for one value is
// recorded in its status row and does not abort the rest.
SweepResult sweep(const std::string& param, const std::vector<double>& values,
                  const ModelParams& params, const Revenue& rev,
                  const Cost& cost, const AgeGrid& grid);

struct AlphaHatResult {
    double alpha_hat = 0.0;
    bool found = false;             // a candidate turning point exists
    bool fd_sign_change_found = false;
    double fd_bracket_lo = 0.0;
    double fd_bracket_hi = 0.0;
    double fd_step = 0.0;
    bool fd_agrees = false; // sign change within one scan step of alpha_hat
    std::string note;
};

// Productivity level at which the stationary profile stops growing in the
// productivity parameter, for quadratic revenue over quadratic costs,
// cross-checked against centered finite differences of the solved profile
// at ages {0, s_bar/2, s_bar}.
AlphaHatResult alpha_hat_quadratic(const ModelParams& params,
                                   const Revenue& rev, const Cost& cost,
                                   const AgeGrid& grid);

// Multiplier under power revenue over purely quadratic costs with trade
// shift theta = nu, as a function of the productivity level.
double power_eta(double alpha, const ModelParams& params, const Revenue& rev,
                 const Cost& cost, const AgeGrid& grid);

// Same turning-point question for power revenue. The candidate solves a
// closed-form first-order condition; the finite difference scan reports
// whether the profile actually turns there.
AlphaHatResult alpha_hat_power(const ModelParams& params, const Revenue& rev,
                               const Cost& cost, const AgeGrid& grid,
                               double tol = 1e-10);

} // namespace vintage
