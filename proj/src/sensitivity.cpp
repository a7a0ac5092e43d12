#include "vintage/sensitivity.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "vintage/csv.hpp"
#include "vintage/errors.hpp"

namespace vintage {

PeakInfo peak_age(const AgeProfile& values, const AgeGrid& grid) {
    if (static_cast<int>(values.size()) != grid.n_nodes)
        throw std::invalid_argument("peak_age: profile size does not match grid");
    PeakInfo info;
    for (int i = 1; i < grid.n_nodes; ++i)
        if (values[i] > values[info.index])
            info.index = i;
    info.s_peak = grid.node(info.index);

    double tol = 1e-10 * std::max(1.0, std::abs(values[info.index]));
    info.single_peaked = true;
    for (int i = 0; i + 1 < grid.n_nodes; ++i) {
        if (i < info.index && values[i + 1] < values[i] - tol)
            info.single_peaked = false;
        if (i >= info.index && values[i + 1] > values[i] + tol)
            info.single_peaked = false;
    }
    return info;
}

SStarResult s_star_analytic(const ModelParams& params, const Cost& cost) {
    SStarResult res;
    double mu = params.mu;
    double lambda = params.lambda;
    double two_mu_lambda = 2.0 * mu + lambda;
    double L = mu + lambda;

    bool q_zero = cost.q0 == 0.0 &&
                  (cost.q1_decay_rate.has_value() ||
                   (cost.q1.is_constant() && cost.q1.constant_value() == 0.0));
    bool quad = cost.kind == CostKind::LinQuad && cost.beta1.is_constant();
    bool alpha_const = params.productivity.is_constant();
    res.regime_ok = q_zero && quad && alpha_const;
    if (!res.regime_ok)
        res.warning = "peak-age formula proven only for constant productivity "
                      "and purely quadratic costs; value reported for the "
                      "nearest such regime";

    double arg = (two_mu_lambda / L) *
                 ((1.0 - mu) * std::exp(L * params.s_bar) +
                  mu * (1.0 - 1.0 / two_mu_lambda));
    if (!(arg > 1.0)) {
        res.regime_ok = false;
        res.warning = "no interior peak: the stationary profile is monotone for "
                      "these rates";
        res.value = arg > 0.0 ? std::log(arg) / two_mu_lambda : 0.0;
        return res;
    }
    res.value = std::log(arg) / two_mu_lambda;
    return res;
}

namespace {

std::vector<std::pair<std::string, std::string>>
provenance_of(const ModelParams& params, const Revenue& rev, const Cost& cost,
              const AgeGrid& grid) {
    std::vector<std::pair<std::string, std::string>> prov;
    auto num = [](double v) { return csv_number(v); };
    prov.emplace_back("alpha", params.productivity.is_constant()
                                   ? num(params.productivity.constant_value())
                                   : std::string("table"));
    prov.emplace_back("mu", num(params.mu));
    prov.emplace_back("lambda", num(params.lambda));
    prov.emplace_back("s_bar", num(params.s_bar));
    switch (rev.kind) {
    case RevenueKind::Quadratic:
        prov.emplace_back("revenue", "quadratic");
        prov.emplace_back("a", num(rev.a));
        prov.emplace_back("b", num(rev.b));
        break;
    case RevenueKind::Log:
        prov.emplace_back("revenue", "log");
        break;
    case RevenueKind::Power:
        prov.emplace_back("revenue", "power");
        prov.emplace_back("b", num(rev.b));
        prov.emplace_back("gamma", num(rev.gamma));
        prov.emplace_back("nu", num(rev.nu));
        break;
    case RevenueKind::PurePower:
        prov.emplace_back("revenue", "pure_power");
        prov.emplace_back("b", num(rev.b));
        prov.emplace_back("gamma", num(rev.gamma));
        break;
    case RevenueKind::Linear:
        prov.emplace_back("revenue", "linear");
        prov.emplace_back("b", num(rev.b));
        break;
    }
    switch (cost.kind) {
    case CostKind::LinQuad:
        prov.emplace_back("cost", "linquad");
        break;
    case CostKind::ConstrainedLinQuad:
        prov.emplace_back("cost", "constrained_linquad");
        prov.emplace_back("M0", num(cost.M0));
        prov.emplace_back("M1", num(cost.M1));
        break;
    case CostKind::LinPower:
        prov.emplace_back("cost", "linpower");
        prov.emplace_back("p", num(cost.p));
        prov.emplace_back("theta", num(cost.theta));
        break;
    }
    prov.emplace_back("beta0", num(cost.beta0));
    prov.emplace_back("beta1", cost.beta1.is_constant()
                                   ? num(cost.beta1.constant_value())
                                   : std::string("table"));
    prov.emplace_back("q0", num(cost.q0));
    if (cost.q1_decay_rate)
        prov.emplace_back("w", num(*cost.q1_decay_rate));
    else
        prov.emplace_back("q1", cost.q1.is_constant()
                                    ? num(cost.q1.constant_value())
                                    : std::string("table"));
    prov.emplace_back("n_nodes", std::to_string(grid.n_nodes));
    return prov;
}

} // namespace

FigureSeries reproduce_figure(int figure, const ModelParams& params,
                              const Revenue& rev, const Cost& cost,
                              const AgeGrid& grid,
                              std::optional<double> alpha_override) {
    if (figure < 1 || figure > 4)
        throw std::invalid_argument("reproduce_figure: figure must be 1..4");

    ModelParams p = params;
    if (figure == 3)
        p.productivity = CoefficientProfile(alpha_override.value_or(12.0));
    else if (figure == 4)
        p.productivity = CoefficientProfile(alpha_override.value_or(24.0));
    else if (alpha_override)
        p.productivity = CoefficientProfile(*alpha_override);

    EquilibriumSolution sol = solve_equilibrium(p, rev, cost, grid);

    FigureSeries series;
    series.figure = figure;
    series.s = grid.nodes();
    if (figure == 2) {
        series.label = "u1";
        series.values = sol.u1_bar;
    } else {
        series.label = "K";
        series.values = sol.K_bar;
    }
    series.provenance = provenance_of(p, rev, cost, grid);
    return series;
}

namespace {

struct SweepCase {
    ModelParams params;
    Revenue rev;
    Cost cost;
    AgeGrid grid;
};

SweepCase apply_param(const std::string& name, double v,
                      const ModelParams& params, const Revenue& rev,
                      const Cost& cost, const AgeGrid& grid) {
    SweepCase c{params, rev, cost, grid};
    if (name == "alpha") {
        c.params.productivity = CoefficientProfile(v);
    } else if (name == "beta0") {
        // A constant age-channel weight equal to the base beta0 tracks it;
        // anything else is left alone.
        if (c.cost.beta1.is_constant() &&
            c.cost.beta1.constant_value() == cost.beta0)
            c.cost.beta1 = CoefficientProfile(v);
        c.cost.beta0 = v;
    } else if (name == "mu") {
        c.params.mu = v;
    } else if (name == "lambda") {
        c.params.lambda = v;
    } else if (name == "q0") {
        c.cost.q0 = v;
    } else if (name == "w") {
        if (!c.cost.q1_decay_rate)
            throw std::invalid_argument(
                "sweep: w applies only when q1 is the exponential decay of q0");
        c.cost.q1_decay_rate = v;
    } else if (name == "a") {
        if (c.rev.kind != RevenueKind::Quadratic)
            throw std::invalid_argument("sweep: a applies to quadratic revenue");
        c.rev.a = v;
    } else if (name == "b") {
        if (c.rev.kind == RevenueKind::Log)
            throw std::invalid_argument("sweep: log revenue has no b");
        c.rev.b = v;
    } else if (name == "gamma") {
        if (c.rev.kind != RevenueKind::Power &&
            c.rev.kind != RevenueKind::PurePower)
            throw std::invalid_argument("sweep: gamma applies to power revenue");
        c.rev.gamma = v;
    } else if (name == "theta") {
        if (c.rev.kind == RevenueKind::Power)
            c.rev.nu = v;
        else if (c.cost.kind == CostKind::LinPower)
            c.cost.theta = v;
        else
            throw std::invalid_argument(
                "sweep: theta applies to power revenue or linpower cost");
    } else if (name == "s_bar") {
        c.params.s_bar = v;
        c.grid = AgeGrid(v, grid.n_nodes);
    } else {
        throw std::invalid_argument("sweep: unknown parameter '" + name + "'");
    }
    return c;
}

ProfileOrder order_of(const AgeProfile& a, const AgeProfile& b) {
    if (a.size() != b.size())
        return ProfileOrder::Mixed;
    bool all_gt = true, all_lt = true, all_eq = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        all_gt = all_gt && a[i] > b[i];
        all_lt = all_lt && a[i] < b[i];
        all_eq = all_eq && a[i] == b[i];
    }
    if (all_eq)
        return ProfileOrder::Equal;
    if (all_gt)
        return ProfileOrder::Greater;
    if (all_lt)
        return ProfileOrder::Less;
    return ProfileOrder::Mixed;
}

} // namespace

SweepResult sweep(const std::string& param, const std::vector<double>& values,
                  const ModelParams& params, const Revenue& rev,
                  const Cost& cost, const AgeGrid& grid) {
    SweepResult res;
    res.param = param;
    res.values = values;
    res.status.resize(values.size());
    res.solutions.resize(values.size());

    std::vector<std::future<EquilibriumSolution>> futures;
    futures.reserve(values.size());
    for (double v : values)
        futures.push_back(std::async(std::launch::async, [&, v]() {
            SweepCase c = apply_param(param, v, params, rev, cost, grid);
            return solve_equilibrium(c.params, c.rev, c.cost, c.grid);
        }));

    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            res.solutions[i] = futures[i].get();
            res.status[i] = "ok";
        } catch (const std::exception& e) {
            res.status[i] = e.what();
        }
    }

    res.order.assign(values.size(),
                     std::vector<ProfileOrder>(values.size(), ProfileOrder::Mixed));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (res.solutions[i])
            res.order[i][i] = ProfileOrder::Equal;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (i == j || !res.solutions[i] || !res.solutions[j])
                continue;
            res.order[i][j] =
                order_of(res.solutions[i]->K_bar, res.solutions[j]->K_bar);
        }
    }
    return res;
}

namespace {

void require_purely_quadratic(const Cost& cost, const AgeGrid& grid,
                              const char* who) {
    if (cost.kind != CostKind::LinQuad)
        throw std::invalid_argument(std::string(who) +
                                    ": cost must be linear-quadratic");
    if (cost.q0 != 0.0)
        throw std::invalid_argument(std::string(who) + ": q0 must be zero");
    for (int i = 0; i < grid.n_nodes; ++i)
        if (cost.q1_at(grid.node(i)) != 0.0)
            throw std::invalid_argument(std::string(who) +
                                        ": q1 must vanish on [0, s_bar]");
}

// Scalar response coefficient at unit productivity: output of the
// stationary profile per unit of squared productivity level.
double unit_output_coefficient(const ModelParams& params, const Cost& cost,
                               const AgeGrid& grid) {
    ModelParams p = params;
    p.productivity = CoefficientProfile(1.0);
    auto [w1, w2] = lq_profiles(p, cost, grid);
    return lq_coefficients(w1, w2, p, grid).first;
}

struct FdScan {
    bool sign_change = false;
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    std::string note;
};

// Centered finite differences of the solved stationary profile in the
// productivity level, probed at ages {0, s_bar/2, s_bar} across a scan of
// productivity values around center.
FdScan fd_profile_response(double center, const ModelParams& params,
                           const Revenue& rev, const Cost& cost,
                           const AgeGrid& grid) {
    FdScan scan;
    const int points = 9;
    scan.step = 1.5 * center / (points - 1);

    auto solve_at = [&](double alpha) {
        ModelParams p = params;
        p.productivity = CoefficientProfile(alpha);
        return solve_equilibrium(p, rev, cost, grid);
    };

    std::vector<double> slopes(points, std::numeric_limits<double>::quiet_NaN());
    int mid = (grid.n_nodes - 1) / 2;
    for (int j = 0; j < points; ++j) {
        double alpha = 0.5 * center + j * scan.step;
        double h = 1e-3 * alpha;
        try {
            EquilibriumSolution up = solve_at(alpha + h);
            EquilibriumSolution dn = solve_at(alpha - h);
            double d0 = (up.K_bar.front() - dn.K_bar.front()) / (2.0 * h);
            double dm = (up.K_bar[mid] - dn.K_bar[mid]) / (2.0 * h);
            double d1 = (up.K_bar.back() - dn.K_bar.back()) / (2.0 * h);
            if ((d0 > 0) != (dm > 0) || (d0 > 0) != (d1 > 0))
                scan.note += "probe ages disagree on the derivative sign near " +
                             csv_number(alpha) + "; ";
            slopes[j] = d0;
        } catch (const std::exception& e) {
            scan.note += "scan point " + csv_number(alpha) + " failed: " +
                         e.what() + "; ";
        }
    }

    for (int j = 0; j + 1 < points; ++j) {
        if (std::isnan(slopes[j]) || std::isnan(slopes[j + 1]))
            continue;
        if ((slopes[j] > 0.0) != (slopes[j + 1] > 0.0)) {
            scan.sign_change = true;
            scan.lo = 0.5 * center + j * scan.step;
            scan.hi = scan.lo + scan.step;
            break;
        }
    }
    return scan;
}

} // namespace

AlphaHatResult alpha_hat_quadratic(const ModelParams& params, const Revenue& rev,
                                   const Cost& cost, const AgeGrid& grid) {
    if (rev.kind != RevenueKind::Quadratic)
        throw std::invalid_argument("alpha_hat_quadratic: revenue must be "
                                    "quadratic");
    if (cost.kind != CostKind::LinQuad)
        throw std::invalid_argument("alpha_hat_quadratic: cost must be "
                                    "linear-quadratic");

    AlphaHatResult res;
    if (rev.a == 0.0) {
        res.note = "revenue has no curvature; the stationary profile is "
                   "monotone in the productivity level";
        return res;
    }

    ModelParams p = params;
    p.productivity = CoefficientProfile(1.0);
    auto [w1, w2] = lq_profiles(p, cost, grid);
    auto [c1u, c2u] = lq_coefficients(w1, w2, p, grid);

    res.alpha_hat = (std::sqrt(c2u + c1u * rev.b * rev.b / (2.0 * rev.a)) - c2u) /
                    (c1u * rev.b);
    res.found = res.alpha_hat > 0.0;
    if (!res.found) {
        res.note = "candidate turning point is not positive";
        return res;
    }

    FdScan scan = fd_profile_response(res.alpha_hat, params, rev, cost, grid);
    res.fd_sign_change_found = scan.sign_change;
    res.fd_bracket_lo = scan.lo;
    res.fd_bracket_hi = scan.hi;
    res.fd_step = scan.step;
    res.fd_agrees = scan.sign_change &&
                    res.alpha_hat >= scan.lo - scan.step &&
                    res.alpha_hat <= scan.hi + scan.step;
    res.note += scan.note;
    if (scan.sign_change && !res.fd_agrees)
        res.note += "finite differences place the turning point in [" +
                    csv_number(scan.lo) + ", " + csv_number(scan.hi) +
                    "], more than one scan step from the candidate; ";
    if (!scan.sign_change)
        res.note += "finite differences report a monotone response on the "
                    "scanned range; ";
    return res;
}

double power_eta(double alpha, const ModelParams& params, const Revenue& rev,
                 const Cost& cost, const AgeGrid& grid) {
    if (rev.kind != RevenueKind::Power)
        throw std::invalid_argument("power_eta: revenue must be the shifted "
                                    "power kind");
    require_purely_quadratic(cost, grid, "power_eta");

    double f = unit_output_coefficient(params, cost, grid);
    double c1 = f * alpha * alpha;
    return closed_form_eta(rev, c1, 0.0);
}

AlphaHatResult alpha_hat_power(const ModelParams& params, const Revenue& rev,
                               const Cost& cost, const AgeGrid& grid,
                               double tol) {
    if (rev.kind != RevenueKind::Power)
        throw std::invalid_argument("alpha_hat_power: revenue must be the "
                                    "shifted power kind");
    require_purely_quadratic(cost, grid, "alpha_hat_power");

    double f = unit_output_coefficient(params, cost, grid);
    double gamma = rev.gamma;
    double theta = rev.nu;

    // Closed-form first-order condition; its root is the candidate
    // turning point.
    auto G = [&](double alpha) {
        double eta = power_eta(alpha, params, rev, cost, grid);
        double fa2 = f * alpha * alpha;
        return 1.0 - 2.0 * (1.0 - gamma) * fa2 /
                         (eta * (1.0 - gamma) + fa2 * eta + theta);
    };

    AlphaHatResult res;
    double lo = std::ldexp(1.0, -20);
    double g_lo = G(lo);
    double hi = lo;
    double g_hi = g_lo;
    for (int k = 0; k < 41 && (g_lo > 0.0) == (g_hi > 0.0); ++k) {
        lo = hi;
        g_lo = g_hi;
        hi *= 2.0;
        g_hi = G(hi);
    }
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        res.note = "first-order condition has no sign change on the scanned "
                   "range; ";
    } else {
        RootOptions opts;
        opts.tol = tol;
        res.alpha_hat = refine_root_increasing(
            [&](double a) { return -G(a); }, lo, hi, opts);
        res.found = true;
    }

    if (res.found) {
        FdScan scan = fd_profile_response(res.alpha_hat, params, rev, cost, grid);
        res.fd_sign_change_found = scan.sign_change;
        res.fd_bracket_lo = scan.lo;
        res.fd_bracket_hi = scan.hi;
        res.fd_step = scan.step;
        res.fd_agrees = scan.sign_change &&
                        res.alpha_hat >= scan.lo - scan.step &&
                        res.alpha_hat <= scan.hi + scan.step;
        res.note += scan.note;
        if (!scan.sign_change)
            res.note += "finite differences report a monotone response on the "
                        "scanned range; ";
    }
    return res;
}

} // namespace vintage
