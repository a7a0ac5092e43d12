#include <doctest.h>

#include <cmath>
#include <string>

#include "vintage/equilibrium.hpp"
#include "vintage/errors.hpp"
#include "test_support.hpp"

using namespace vintage;
namespace tc = testcfg;
namespace fz = testcfg::frozen;

namespace {

const EquilibriumSolution& bench2001() {
    static EquilibriumSolution sol = solve_equilibrium(
        tc::reference_params(), tc::reference_revenue(), tc::reference_cost(),
        tc::reference_grid());
    return sol;
}

} // namespace

TEST_CASE("discounted lifetime return matches the constant-rate closed form") {
    auto params = tc::reference_params();
    AgeGrid g = tc::reference_grid(4001);
    AgeProfile abar = discounted_return(params, g);
    double worst = 0.0;
    for (int i = 0; i < g.n_nodes; ++i) {
        double exact = tc::closed_abar(g.node(i), 3.0, 0.2, 0.1, 10.0);
        worst = std::max(worst, std::abs(abar[i] - exact));
    }
    CHECK(worst <= 1e-10);
    CHECK(abar.back() == 0.0);
    CHECK(abar[0] == doctest::Approx(fz::abar0_2001).epsilon(1e-12));
}

TEST_CASE("lifetime response and drag profiles match their closed forms") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    auto check_at = [&](int n, double* w1_err_out) {
        AgeGrid g = tc::reference_grid(n);
        auto [w1, w2] = lq_profiles(params, cost, g);
        double e1 = 0.0, e2 = 0.0;
        for (int i = 0; i < g.n_nodes; ++i) {
            double s = g.node(i);
            e1 = std::max(e1, std::abs(w1[i] - tc::closed_w1(s, 3.0, 0.5, 0.2,
                                                             0.1, 10.0)));
            e2 = std::max(e2, std::abs(w2[i] - tc::closed_w2(s, 5.0, 0.25, 0.5,
                                                             0.2)));
        }
        CHECK(e1 <= 1e-5);
        CHECK(e2 <= 1e-5);
        *w1_err_out = e1;
    };
    double e_coarse = 0.0, e_fine = 0.0;
    check_at(2001, &e_coarse);
    check_at(4001, &e_fine);
    CHECK(e_fine <= 1e-6);
    // second-order rule: halving the spacing divides the defect by ~4
    CHECK(e_coarse / e_fine >= 3.5);
    CHECK(e_coarse / e_fine <= 4.5);
}

TEST_CASE("output and drag coefficients at the reference configuration") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();

    AgeGrid g2001 = tc::reference_grid(2001);
    auto [w1a, w2a] = lq_profiles(params, cost, g2001);
    auto [c1a, c2a] = lq_coefficients(w1a, w2a, params, g2001);
    CHECK(c1a == doctest::Approx(fz::c1_2001).epsilon(1e-12));
    CHECK(c2a == doctest::Approx(fz::c2_2001).epsilon(1e-12));

    AgeGrid g4001 = tc::reference_grid(4001);
    auto [w1b, w2b] = lq_profiles(params, cost, g4001);
    auto [c1b, c2b] = lq_coefficients(w1b, w2b, params, g4001);
    CHECK(c1b == doctest::Approx(fz::c1_4001).epsilon(1e-12));
    CHECK(c2b == doctest::Approx(fz::c2_4001).epsilon(1e-12));

    // both sit within the rule's quadratic error of the closed-form values
    CHECK(c1b == doctest::Approx(fz::k1_closed).epsilon(1e-7));
    CHECK(c2b == doctest::Approx(fz::k2_closed).epsilon(1e-7));
}

TEST_CASE("reference equilibrium reproduces its frozen solution") {
    const auto& sol = bench2001();
    CHECK(sol.eta == doctest::Approx(fz::eta_2001).epsilon(5e-11));
    CHECK(sol.Q_star == doctest::Approx(fz::Q_2001).epsilon(1e-12));
    CHECK(sol.u0_bar == doctest::Approx(fz::u0_2001).epsilon(1e-11));
    CHECK(sol.K_bar.front() == doctest::Approx(fz::K0_2001).epsilon(1e-11));
    CHECK(sol.K_bar.back() == doctest::Approx(fz::Ksb_2001).epsilon(1e-11));
    CHECK(sol.min_K == doctest::Approx(fz::minK_2001).epsilon(1e-11));
    CHECK(sol.u1_bar.back() == doctest::Approx(fz::u1sb_2001).epsilon(1e-11));
    // the terminal maintenance control is a closed form: -q1(s_bar)/(2 beta1)
    CHECK(sol.u1_bar.back() == doctest::Approx(-5.0 * std::exp(-2.5)));
    CHECK(sol.zeta_bar.front() ==
          doctest::Approx(fz::zeta0_2001).epsilon(1e-11));
    CHECK(sol.zeta_bar.back() == 0.0);
    CHECK(sol.nonneg);
    CHECK(sol.min_K > 0.0);
    CHECK_FALSE(sol.uniqueness_not_covered);
    CHECK(sol.residuals.theta_at_eta <= 1e-12);
    CHECK(sol.residuals.max() <= 1e-8);
}

TEST_CASE("multiplier is grid-consistent at a finer resolution") {
    auto sol = solve_equilibrium(tc::reference_params(), tc::reference_revenue(),
                                 tc::reference_cost(), tc::reference_grid(4001));
    CHECK(sol.eta == doctest::Approx(fz::eta_4001).epsilon(5e-11));
}

TEST_CASE("scalar equation is increasing and vanishes at the multiplier") {
    auto params = tc::reference_params();
    auto rev = tc::reference_revenue();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    const auto& sol = bench2001();
    CHECK(std::abs(theta_of_eta(sol.eta, params, rev, cost, g)) <= 1e-12);
    CHECK(theta_of_eta(sol.eta + 0.1, params, rev, cost, g) > 0.0);
    CHECK(theta_of_eta(sol.eta - 0.1, params, rev, cost, g) < 0.0);
}

TEST_CASE("capital profile decomposes over the quadratic-cost basis") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    auto [w1, w2] = lq_profiles(params, cost, g);
    double eta = 0.7;
    AgeProfile F = F_of_eta(eta, params, cost, g);
    double worst = 0.0;
    for (int i = 0; i < g.n_nodes; ++i)
        worst = std::max(worst, std::abs(F[i] - (eta * w1[i] - w2[i])));
    CHECK(worst <= 1e-12);
}

TEST_CASE("closed-form multiplier: quadratic revenue") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    auto [w1, w2] = lq_profiles(params, cost, g);
    auto [c1, c2] = lq_coefficients(w1, w2, params, g);
    double eta = closed_form_eta(tc::reference_revenue(), c1, c2);
    CHECK(eta == doctest::Approx(bench2001().eta).epsilon(1e-10));
}

TEST_CASE("closed-form multiplier: log revenue") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    auto [w1, w2] = lq_profiles(params, cost, g);
    auto [c1, c2] = lq_coefficients(w1, w2, params, g);
    double eta_closed = closed_form_eta(Revenue::log(), c1, c2);
    CHECK(eta_closed == doctest::Approx(fz::eta_log_2001).epsilon(5e-11));
    auto sol = solve_equilibrium(params, Revenue::log(), cost, g);
    CHECK(sol.eta == doctest::Approx(eta_closed).epsilon(1e-10));
}

TEST_CASE("closed-form multiplier: power revenue") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    auto [w1, w2] = lq_profiles(params, cost, g);
    auto [c1, c2] = lq_coefficients(w1, w2, params, g);
    Revenue rev = Revenue::power(1.0, 0.5, 0.1);
    double eta_closed = closed_form_eta(rev, c1, c2);
    CHECK(eta_closed == doctest::Approx(fz::eta_power_2001).epsilon(1e-10));
    auto sol = solve_equilibrium(params, rev, cost, g);
    CHECK(sol.eta == doctest::Approx(eta_closed).epsilon(1e-10));
}

TEST_CASE("closed-form multiplier: pure power revenue over free entry") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost(0.0); // q identically zero
    AgeGrid g = tc::reference_grid();
    auto [w1, w2] = lq_profiles(params, cost, g);
    auto [c1, c2] = lq_coefficients(w1, w2, params, g);
    CHECK(std::abs(c2) <= 1e-14);
    Revenue rev = Revenue::pure_power(1.0, 0.5);
    double eta_closed = closed_form_eta(rev, c1, 0.0);
    CHECK(eta_closed == doctest::Approx(fz::eta_pp_2001).epsilon(1e-11));
    // analytic: eta = (b*gamma/sqrt(c1))^(2/3) for gamma = 1/2
    CHECK(eta_closed ==
          doctest::Approx(std::pow(0.5 / std::sqrt(c1), 2.0 / 3.0))
              .epsilon(1e-12));
    auto sol = solve_equilibrium(params, rev, cost, g);
    CHECK(sol.eta == doctest::Approx(eta_closed).epsilon(1e-10));
}

TEST_CASE("closed-form multiplier: linear revenue is the slope itself") {
    CHECK(closed_form_eta(Revenue::linear(0.37), 100.0, 5.0) == 0.37);
}

TEST_CASE("best-reply map fixes the stationary profile") {
    auto params = tc::reference_params();
    auto rev = tc::reference_revenue();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    const auto& sol = bench2001();
    AgeProfile mapped = apply_T(sol.K_bar, params, rev, cost, g);
    CHECK(sup_distance(mapped, sol.K_bar) <= 1e-8);
}

TEST_CASE("fixed-point iteration lands on the root-based solution") {
    auto params = tc::reference_params();
    auto rev = tc::reference_revenue();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid();
    auto fp = solve_equilibrium_fixed_point(params, rev, cost, g);
    CHECK(fp.diagnostics.converged);
    CHECK(fp.diagnostics.contraction_estimate < 0.1);
    CHECK(sup_distance(fp.profile, bench2001().K_bar) <= 1e-8);
}

TEST_CASE("fixed-point iteration under linear revenue needs one application") {
    auto params = tc::reference_params();
    auto cost = tc::reference_cost();
    AgeGrid g = tc::reference_grid(201);
    auto fp = solve_equilibrium_fixed_point(params, Revenue::linear(1.0), cost,
                                            g);
    CHECK(fp.diagnostics.converged);
    // first application leaves zero, second confirms it moved nowhere
    CHECK(fp.diagnostics.iterations == 2);
    CHECK(fp.diagnostics.step_norms.back() == 0.0);
}

TEST_CASE("negative multiplier root is flagged as outside the covered regime") {
    auto params = tc::reference_params();
    // negative entry prices subsidise capital: output at eta = 0 is already
    // so large that marginal revenue is negative there
    auto cost = Cost::lin_quad_decay(0.5, CoefficientProfile(0.5), -5.0, 0.25);
    Revenue rev = Revenue::quadratic(0.01, 0.5);
    AgeGrid g = tc::reference_grid(201);
    auto sol = solve_equilibrium(params, rev, cost, g);
    CHECK(sol.eta < 0.0);
    CHECK(sol.uniqueness_not_covered);
    CHECK_FALSE(sol.warnings.empty());
    CHECK(sol.residuals.theta_at_eta <= 1e-12);
}

TEST_CASE("unaffordable entry prices break nonnegativity and warn") {
    auto params = tc::reference_params();
    auto cost = Cost::lin_quad_decay(0.5, CoefficientProfile(0.5), 50.0, 0.25);
    AgeGrid g = tc::reference_grid(201);
    auto sol = solve_equilibrium(params, tc::reference_revenue(), cost, g);
    CHECK_FALSE(sol.nonneg);
    CHECK(sol.min_K < 0.0);
    CHECK_FALSE(sol.warnings.empty());
}

TEST_CASE("invalid configurations aggregate every issue into one error") {
    ModelParams params = tc::reference_params();
    params.mu = -1.0;
    Cost cost = tc::reference_cost();
    cost.beta0 = 0.0;
    AgeGrid g = tc::reference_grid(101);
    try {
        solve_equilibrium(params, tc::reference_revenue(), cost, g);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("model.mu") != std::string::npos);
        CHECK(msg.find("cost.beta0") != std::string::npos);
    }
}
