#include "vintage/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "vintage/errors.hpp"
#include "vintage/quadrature.hpp"

namespace vintage {

ControlPath ControlPath::zero() {
    ControlPath c;
    c.constant = true;
    c.u0_value = 0.0;
    return c;
}

ControlPath ControlPath::frozen(double u0, AgeProfile u1) {
    ControlPath c;
    c.constant = true;
    c.u0_value = u0;
    c.u1_value = std::move(u1);
    return c;
}

ControlPath ControlPath::tabulated(std::vector<double> u0,
                                   std::vector<AgeProfile> u1) {
    ControlPath c;
    c.constant = false;
    c.u0_series = std::move(u0);
    c.u1_series = std::move(u1);
    return c;
}

double ControlPath::u0_at(int step) const {
    return constant ? u0_value : u0_series[step];
}

double ControlPath::u1_at(int step, int node) const {
    if (constant)
        return u1_value.empty() ? 0.0 : u1_value[node];
    return u1_series[step][node];
}

namespace {

int step_count(double t_final, const AgeGrid& grid) {
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw std::invalid_argument("simulate: t_final must be nonnegative");
    double steps = t_final / grid.ds();
    int n = static_cast<int>(std::lround(steps));
    if (std::abs(steps - n) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument(
            "simulate: t_final must be a whole number of grid steps");
    return n;
}

void check_controls(const ControlPath& controls, int n_steps,
                    const AgeGrid& grid) {
    auto check_finite = [](double v) {
        if (!std::isfinite(v))
            throw InputError("simulate: controls contain a non-finite value");
    };
    if (controls.constant) {
        check_finite(controls.u0_value);
        if (!controls.u1_value.empty() &&
            static_cast<int>(controls.u1_value.size()) != grid.n_nodes)
            throw InputError("simulate: control profile size does not match grid");
        for (double v : controls.u1_value)
            check_finite(v);
        return;
    }
    if (static_cast<int>(controls.u0_series.size()) != n_steps + 1 ||
        static_cast<int>(controls.u1_series.size()) != n_steps + 1)
        throw InputError("simulate: tabulated controls must provide one entry "
                         "per time node");
    for (double v : controls.u0_series)
        check_finite(v);
    for (const auto& profile : controls.u1_series) {
        if (static_cast<int>(profile.size()) != grid.n_nodes)
            throw InputError("simulate: control profile size does not match grid");
        for (double v : profile)
            check_finite(v);
    }
}

} // namespace

Trajectory simulate(const AgeProfile& x0, const ControlPath& controls,
                    const ModelParams& params, const AgeGrid& grid,
                    double t_final) {
    if (static_cast<int>(x0.size()) != grid.n_nodes)
        throw InputError("simulate: initial profile size does not match grid");
    for (double v : x0)
        if (!std::isfinite(v))
            throw InputError("simulate: initial profile contains a non-finite "
                             "value");
    int n_steps = step_count(t_final, grid);
    check_controls(controls, n_steps, grid);

    auto [E, wn, wf] = exp_panel_weights(params.mu, grid.ds());
    double h = grid.ds();

    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.frames.reserve(n_steps + 1);

    AgeProfile cur = x0;
    cur[0] = controls.u0_at(0); // age zero belongs to the entry cohort
    traj.times.push_back(0.0);
    traj.frames.push_back(cur);

    for (int j = 0; j < n_steps; ++j) {
        AgeProfile next(grid.n_nodes);
        next[0] = controls.u0_at(j + 1);
        for (int i = 0; i + 1 < grid.n_nodes; ++i)
            next[i + 1] = E * cur[i] + wn * controls.u1_at(j + 1, i + 1) +
                          wf * controls.u1_at(j, i);
        cur = std::move(next);
        traj.times.push_back((j + 1) * h);
        traj.frames.push_back(cur);
    }
    return traj;
}

AgeProfile costate_field(const std::vector<double>& Q_path,
                         const ModelParams& params, const Revenue& rev,
                         const AgeGrid& grid) {
    int n = grid.n_nodes;
    if (static_cast<int>(Q_path.size()) < n)
        throw InputError("costate_field: output path shorter than the lookahead "
                         "window");
    for (double q : Q_path)
        if (!std::isfinite(q))
            throw InputError("costate_field: output path contains a non-finite "
                             "value");

    AgeProfile alpha = params.productivity.sample(grid);
    auto [E, wn, wf] = exp_panel_weights(params.mu + params.lambda, grid.ds());

    AgeProfile out(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = n - 2; k >= i; --k) {
            double g_near = revenue_slope(rev, Q_path[k - i]) * alpha[k];
            double g_far = revenue_slope(rev, Q_path[k + 1 - i]) * alpha[k + 1];
            acc = E * acc + wn * g_near + wf * g_far;
        }
        out[i] = acc;
    }
    return out;
}

ResidualReport mp_residuals(const EquilibriumSolution& candidate,
                            const ModelParams& params, const Revenue& rev,
                            const Cost& cost, const AgeGrid& grid) {
    int n = grid.n_nodes;
    if (static_cast<int>(candidate.K_bar.size()) != n ||
        static_cast<int>(candidate.zeta_bar.size()) != n ||
        static_cast<int>(candidate.u1_bar.size()) != n)
        throw std::invalid_argument("mp_residuals: candidate profiles do not "
                                    "match the grid");

    ResidualReport rep;
    rep.r_T = sup_distance(apply_T(candidate.K_bar, params, rev, cost, grid),
                           candidate.K_bar);

    AgeProfile alpha = params.productivity.sample(grid);
    AgeProfile weighted(n);
    for (int i = 0; i < n; ++i)
        weighted[i] = alpha[i] * candidate.K_bar[i];
    double Q = trapezoid(grid, weighted);
    double slope = revenue_slope(rev, Q);

    AgeProfile abar = discounted_return(params, grid);
    for (int i = 0; i < n; ++i)
        rep.r_zeta = std::max(rep.r_zeta,
                              std::abs(candidate.zeta_bar[i] - slope * abar[i]));

    rep.r_u0 = std::abs(candidate.u0_bar -
                        conj0_prime(cost, candidate.zeta_bar[0]));
    for (int i = 0; i < n; ++i) {
        double u = conj1_prime(cost, grid.node(i), candidate.zeta_bar[i],
                               params.s_bar);
        rep.r_u1 = std::max(rep.r_u1, std::abs(candidate.u1_bar[i] - u));
    }
    rep.theta_at_eta =
        std::abs(theta_of_eta(candidate.eta, params, rev, cost, grid));
    return rep;
}

double ResidualReport::max() const {
    double m = r_T;
    m = std::max(m, r_zeta);
    m = std::max(m, r_u0);
    m = std::max(m, r_u1);
    return std::max(m, theta_at_eta);
}

ConvergenceSeries convergence_probe(const AgeProfile& x0,
                                    const EquilibriumSolution& eq,
                                    const ModelParams& params,
                                    const AgeGrid& grid, double t_final) {
    if (t_final < grid.s_bar)
        throw std::invalid_argument("convergence_probe: horizon must reach the "
                                    "scrapping age");
    Trajectory traj = simulate(x0, ControlPath::frozen(eq.u0_bar, eq.u1_bar),
                               params, grid, t_final);

    ConvergenceSeries series;
    series.times = traj.times;
    series.sup_errors.reserve(traj.frames.size());
    series.weak_errors.reserve(traj.frames.size());
    double cutoff = grid.s_bar - 1e-9 * grid.s_bar;
    for (std::size_t j = 0; j < traj.frames.size(); ++j) {
        AgeProfile diff(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i)
            diff[i] = traj.frames[j][i] - eq.K_bar[i];
        double sup = sup_norm(diff);
        double weak = primitive_weak_norm(diff, grid);
        series.sup_errors.push_back(sup);
        series.weak_errors.push_back(weak);
        if (series.times[j] >= cutoff) {
            series.max_sup_after_sbar = std::max(series.max_sup_after_sbar, sup);
            series.max_weak_after_sbar =
                std::max(series.max_weak_after_sbar, weak);
        }
    }
    return series;
}

double primitive_weak_norm(const AgeProfile& f, const AgeGrid& grid) {
    if (static_cast<int>(f.size()) != grid.n_nodes)
        throw std::invalid_argument("primitive_weak_norm: profile size does not "
                                    "match grid");
    double h = grid.ds();
    AgeProfile primitive(grid.n_nodes);
    primitive[0] = 0.0;
    for (int i = 0; i + 1 < grid.n_nodes; ++i)
        primitive[i + 1] = primitive[i] + 0.5 * h * (f[i] + f[i + 1]);
    for (double& v : primitive)
        v *= v;
    return std::sqrt(trapezoid(grid, primitive));
}

} // namespace vintage
