#include "vintage/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vintage/dynamics.hpp"
#include "vintage/errors.hpp"
#include "vintage/quadrature.hpp"

namespace vintage {

namespace {

struct Workspace {
    AgeProfile alpha;
    AgeProfile abar;
    AgeProfile decay; // exp(-mu*s_i), built multiplicatively so each node
                      // carries exactly one marching step more than the last
};

Workspace make_workspace(const ModelParams& params, const AgeGrid& grid) {
    Workspace ws;
    ws.alpha = params.productivity.sample(grid);
    ws.abar = backward_discounted_tail(grid, ws.alpha, params.mu + params.lambda);
    ws.decay.resize(grid.n_nodes);
    double E = std::exp(-params.mu * grid.ds());
    ws.decay[0] = 1.0;
    for (int i = 1; i < grid.n_nodes; ++i)
        ws.decay[i] = E * ws.decay[i - 1];
    return ws;
}

AgeProfile f_profile(double eta, const ModelParams& params, const Cost& cost,
                     const AgeGrid& grid, const Workspace& ws) {
    AgeProfile g(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        g[i] = conj1_prime(cost, grid.node(i), eta * ws.abar[i], params.s_bar);
    AgeProfile K = forward_exp_convolution(grid, g, params.mu);
    double u0 = conj0_prime(cost, eta * ws.abar[0]);
    for (int i = 0; i < grid.n_nodes; ++i)
        K[i] += u0 * ws.decay[i];
    return K;
}

double output_of(const AgeProfile& K, const AgeGrid& grid, const Workspace& ws) {
    AgeProfile weighted(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        weighted[i] = ws.alpha[i] * K[i];
    return trapezoid(grid, weighted);
}

double theta_value(double eta, const ModelParams& params, const Revenue& rev,
                   const Cost& cost, const AgeGrid& grid, const Workspace& ws) {
    double Q = output_of(f_profile(eta, params, cost, grid, ws), grid, ws);
    return eta - revenue_slope(rev, Q);
}

void validate_all(const ModelParams& params, const Revenue& rev, const Cost& cost,
                  const AgeGrid& grid) {
    std::vector<std::string> issues = params.validate();
    for (auto& s : rev.validate())
        issues.push_back(std::move(s));
    for (auto& s : cost.validate(grid))
        issues.push_back(std::move(s));
    if (!issues.empty())
        throw ConfigError(std::move(issues));
}

} // namespace

AgeProfile discounted_return(const ModelParams& params, const AgeGrid& grid) {
    AgeProfile alpha = params.productivity.sample(grid);
    return backward_discounted_tail(grid, alpha, params.mu + params.lambda);
}

AgeProfile F_of_eta(double eta, const ModelParams& params, const Cost& cost,
                    const AgeGrid& grid) {
    return f_profile(eta, params, cost, grid, make_workspace(params, grid));
}

double theta_of_eta(double eta, const ModelParams& params, const Revenue& rev,
                    const Cost& cost, const AgeGrid& grid) {
    return theta_value(eta, params, rev, cost, grid,
                       make_workspace(params, grid));
}

EquilibriumSolution solve_equilibrium(const ModelParams& params,
                                      const Revenue& rev, const Cost& cost,
                                      const AgeGrid& grid, double tol) {
    validate_all(params, rev, cost, grid);
    Workspace ws = make_workspace(params, grid);
    auto theta = [&](double eta) {
        return theta_value(eta, params, rev, cost, grid, ws);
    };

    RootOptions opts;
    opts.tol = tol;

    EquilibriumSolution sol;
    try {
        sol.eta = find_root_increasing(theta, opts);
    } catch (const NoNonnegativeRootError&) {
        sol.eta = find_root_increasing_whole_line(theta, opts);
        sol.uniqueness_not_covered = true;
        sol.warnings.push_back(
            "scalar equation positive at zero: multiplier is negative, outside "
            "the regime with a unique stationary solution");
    }

    sol.K_bar = f_profile(sol.eta, params, cost, grid, ws);
    sol.Q_star = output_of(sol.K_bar, grid, ws);
    sol.zeta_bar.resize(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        sol.zeta_bar[i] = sol.eta * ws.abar[i];
    sol.u0_bar = conj0_prime(cost, sol.zeta_bar[0]);
    sol.u1_bar.resize(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        sol.u1_bar[i] =
            conj1_prime(cost, grid.node(i), sol.zeta_bar[i], params.s_bar);

    sol.min_K = *std::min_element(sol.K_bar.begin(), sol.K_bar.end());
    sol.nonneg = sol.min_K >= 0.0;
    if (!sol.nonneg)
        sol.warnings.push_back("stationary capital profile dips below zero; the "
                               "positivity proviso fails for this configuration");
    if (params.lambda <= 0.0)
        sol.warnings.push_back("lambda <= 0: the stationarity conditions are "
                               "sufficient here but their necessity is untested "
                               "territory");

    sol.residuals = mp_residuals(sol, params, rev, cost, grid);
    return sol;
}

AgeProfile apply_T(const AgeProfile& x, const ModelParams& params,
                   const Revenue& rev, const Cost& cost, const AgeGrid& grid) {
    if (static_cast<int>(x.size()) != grid.n_nodes)
        throw std::invalid_argument("apply_T: profile size does not match grid");
    Workspace ws = make_workspace(params, grid);
    double eta = revenue_slope(rev, output_of(x, grid, ws));
    return f_profile(eta, params, cost, grid, ws);
}

FixedPointResult solve_equilibrium_fixed_point(const ModelParams& params,
                                               const Revenue& rev,
                                               const Cost& cost,
                                               const AgeGrid& grid, double tol,
                                               int max_iter) {
    validate_all(params, rev, cost, grid);
    Workspace ws = make_workspace(params, grid);
    auto map = [&, ws](const AgeProfile& x) {
        double eta = revenue_slope(rev, output_of(x, grid, ws));
        return f_profile(eta, params, cost, grid, ws);
    };
    return fixed_point_iterate(map, AgeProfile(grid.n_nodes, 0.0), tol, max_iter);
}

std::pair<AgeProfile, AgeProfile> lq_profiles(const ModelParams& params,
                                              const Cost& cost,
                                              const AgeGrid& grid) {
    if (cost.kind != CostKind::LinQuad)
        throw std::invalid_argument("lq_profiles: cost is not linear-quadratic");
    Workspace ws = make_workspace(params, grid);

    AgeProfile g1(grid.n_nodes), g2(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) {
        double s = grid.node(i);
        double twob = 2.0 * cost.beta1_at(s);
        g1[i] = ws.abar[i] / twob;
        g2[i] = cost.q1_at(s) / twob;
    }
    AgeProfile w1 = forward_exp_convolution(grid, g1, params.mu);
    AgeProfile w2 = forward_exp_convolution(grid, g2, params.mu);
    double a0 = ws.abar[0] / (2.0 * cost.beta0);
    double b0 = cost.q0 / (2.0 * cost.beta0);
    for (int i = 0; i < grid.n_nodes; ++i) {
        w1[i] += a0 * ws.decay[i];
        w2[i] += b0 * ws.decay[i];
    }
    return {std::move(w1), std::move(w2)};
}

std::pair<double, double> lq_coefficients(const AgeProfile& w1,
                                          const AgeProfile& w2,
                                          const ModelParams& params,
                                          const AgeGrid& grid) {
    AgeProfile alpha = params.productivity.sample(grid);
    AgeProfile p1(grid.n_nodes), p2(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) {
        p1[i] = alpha[i] * w1[i];
        p2[i] = alpha[i] * w2[i];
    }
    return {trapezoid(grid, p1), trapezoid(grid, p2)};
}

double closed_form_eta(const Revenue& rev, double c1, double c2) {
    if (!(c1 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw std::invalid_argument("closed_form_eta: c1 must be nonnegative and "
                                    "both coefficients finite");
    switch (rev.kind) {
    case RevenueKind::Linear:
        return rev.b;
    case RevenueKind::Quadratic:
        return (rev.b + 2.0 * rev.a * c2) / (1.0 + 2.0 * rev.a * c1);
    case RevenueKind::Log: {
        double d = 1.0 - c2;
        double eta;
        if (c1 == 0.0) {
            if (d <= 0.0)
                throw DomainError("closed_form_eta: degenerate log case has no "
                                  "positive root");
            eta = 1.0 / d;
        } else if (d >= 0.0) {
            eta = 2.0 / (std::sqrt(d * d + 4.0 * c1) + d);
        } else {
            eta = (std::sqrt(d * d + 4.0 * c1) - d) / (2.0 * c1);
        }
        // The surd solves the branch with nonnegative output; if output
        // comes out negative the slope is pinned at one instead.
        if (c1 * eta - c2 < 0.0)
            eta = 1.0;
        return eta;
    }
    case RevenueKind::Power: {
        auto theta = [&](double eta) {
            return eta - revenue_slope(rev, c1 * eta - c2);
        };
        return find_root_increasing(theta, 1e-14);
    }
    case RevenueKind::PurePower: {
        auto theta = [&](double eta) {
            double Q = c1 * eta - c2;
            if (Q <= 0.0)
                return -HUGE_VAL;
            return eta - rev.b * rev.gamma * std::pow(Q, rev.gamma - 1.0);
        };
        return find_root_increasing(theta, 1e-14);
    }
    }
    throw std::logic_error("closed_form_eta: unknown kind");
}

} // namespace vintage
