#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vintage/fixed_point.hpp"
#include "vintage/grid.hpp"
#include "vintage/model.hpp"
#include "vintage/roots.hpp"

namespace vintage {

// Sup-norm defects of the stationarity conditions, all nonnegative.
struct ResidualReport {
    double r_T = 0.0;         // ||T K - K||
    double r_zeta = 0.0;      // shadow value vs discounted-return identity
    double r_u0 = 0.0;        // boundary control optimality
    double r_u1 = 0.0;        // distributed control optimality
    double theta_at_eta = 0.0; // |scalar equation at the solved multiplier|

    double max() const;
};

struct EquilibriumSolution {
    double eta = 0.0;    // marginal revenue multiplier
    double Q_star = 0.0; // aggregate output
    double u0_bar = 0.0; // boundary control
    AgeProfile K_bar;    // capital age profile
    AgeProfile zeta_bar; // shadow value profile
    AgeProfile u1_bar;   // distributed control profile
    ResidualReport residuals;
    double min_K = 0.0;
    bool nonneg = false;
    bool uniqueness_not_covered = false; // multiplier found below zero
    std::vector<std::string> warnings;
};

// Discounted cumulative productivity of the remaining lifetime,
// integral over [s, s_bar] of exp(-(mu+lambda)(sigma-s)) alpha(sigma).
AgeProfile discounted_return(const ModelParams& params, const AgeGrid& grid);

// Capital profile induced by a constant marginal revenue eta.
AgeProfile F_of_eta(double eta, const ModelParams& params, const Cost& cost,
                    const AgeGrid& grid);

// Scalar equation theta(eta) = eta - R'(<alpha, F(eta)>), strictly
// increasing in eta.
double theta_of_eta(double eta, const ModelParams& params, const Revenue& rev,
                    const Cost& cost, const AgeGrid& grid);

// Solves theta(eta) = 0 and assembles the full stationary solution. When
// theta(0) > 0 the root is negative; it is still returned, flagged
// uniqueness_not_covered.
EquilibriumSolution solve_equilibrium(const ModelParams& params,
                                      const Revenue& rev, const Cost& cost,
                                      const AgeGrid& grid, double tol = 1e-12);

// One application of the best-reply map x -> F(R'(<alpha, x>)).
AgeProfile apply_T(const AgeProfile& x, const ModelParams& params,
                   const Revenue& rev, const Cost& cost, const AgeGrid& grid);

// Iterates the best-reply map from the zero profile.
FixedPointResult solve_equilibrium_fixed_point(const ModelParams& params,
                                               const Revenue& rev,
                                               const Cost& cost,
                                               const AgeGrid& grid,
                                               double tol = 1e-10,
                                               int max_iter = 200);

// Decomposition F(eta) = eta*w1 - w2 available for LinQuad costs; w1
// carries the productivity response, w2 the linear cost drag.
std::pair<AgeProfile, AgeProfile> lq_profiles(const ModelParams& params,
                                              const Cost& cost,
                                              const AgeGrid& grid);

// c1 = <alpha, w1>, c2 = <alpha, w2>, so <alpha, F(eta)> = c1*eta - c2.
std::pair<double, double> lq_coefficients(const AgeProfile& w1,
                                          const AgeProfile& w2,
                                          const ModelParams& params,
                                          const AgeGrid& grid);

// Root of eta = R'(c1*eta - c2) in closed form where the revenue admits
// one (quadratic, log, linear) and by direct scalar solve otherwise.
double closed_form_eta(const Revenue& rev, double c1, double c2);

} // namespace vintage
