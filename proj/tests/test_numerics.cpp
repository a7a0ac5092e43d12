#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <vector>

#include "vintage/errors.hpp"
#include "vintage/fixed_point.hpp"
#include "vintage/grid.hpp"
#include "vintage/quadrature.hpp"
#include "vintage/roots.hpp"

using namespace vintage;

TEST_CASE("age grid geometry") {
    AgeGrid g(10.0, 2001);
    CHECK(g.ds() == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(2000) == 10.0);
    CHECK(g.node(1000) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(AgeGrid(10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(AgeGrid(-1.0, 100), std::invalid_argument);
}

TEST_CASE("linear interpolation on a grid") {
    AgeGrid g(1.0, 11);
    AgeProfile v(11);
    for (int i = 0; i < 11; ++i) v[i] = 2.0 * g.node(i) + 1.0;
    CHECK(interp_linear(g, v, 0.37) == doctest::Approx(1.74).epsilon(1e-14));
    CHECK(interp_linear(g, v, 0.0) == doctest::Approx(1.0));
    CHECK(interp_linear(g, v, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(interp_linear(g, v, 1.5), DomainError);
}

TEST_CASE("trapezoid rule is exact on affine integrands") {
    AgeGrid g(3.0, 7);
    AgeProfile v(7);
    for (int i = 0; i < 7; ++i) v[i] = 4.0 - 0.5 * g.node(i);
    // integral of 4 - s/2 on [0,3] is 12 - 9/4
    CHECK(trapezoid(g, v) == doctest::Approx(9.75).epsilon(1e-15));
}

TEST_CASE("trapezoid rule error halves quadratically") {
    auto err = [](int n) {
        AgeGrid g(1.0, n);
        AgeProfile v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[i] = std::exp(-g.node(i));
        double exact = 1.0 - std::exp(-1.0);
        return std::abs(trapezoid(g, v) - exact);
    };
    double e1 = err(101);
    double e2 = err(201);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("exponential panel weights recover plain trapezoid at rate zero") {
    auto w = exp_panel_weights(0.0, 0.01);
    CHECK(w.decay == doctest::Approx(1.0));
    CHECK(w.near == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(w.far == doctest::Approx(0.005).epsilon(1e-14));
}

TEST_CASE("exponential panel weights are exact for affine integrands") {
    // One panel of the recurrence must reproduce
    //   int_0^h exp(-r (h - t)) (a + b t) dt
    // exactly for any a, b. Checked on both branches of the weight
    // formula against a long double closed form, so the comparison only
    // measures the double-precision side.
    auto check = [](double r, double h, double eps) {
        double a = 2.0, b = -4.0;
        auto w = exp_panel_weights(r, h);
        double got = w.near * (a + b * h) + w.far * a;
        // analytic: a*(1-E)/r + b*(h/r - (1-E)/r^2), E = exp(-r h)
        long double rl = r, hl = h;
        long double E = std::exp(-rl * hl);
        long double exact =
            a * (1.0L - E) / rl + b * (hl / rl - (1.0L - E) / (rl * rl));
        CHECK(got == doctest::Approx(static_cast<double>(exact)).epsilon(eps));
    };
    check(0.3, 10.0, 1e-14); // large r*h, no cancellation anywhere
    check(0.3, 0.5, 1e-13);  // moderate r*h, direct branch
    check(0.02, 0.05, 1e-14); // tiny r*h, series branch
}

TEST_CASE("exponential panel weights: series branch matches direct formula") {
    // Evaluate both branches just beside the cutoff and compare each
    // against a long double reference of the closed form, which keeps
    // enough digits through the cancellation to act as ground truth.
    auto reference = [](double rate, double h) {
        long double z = static_cast<long double>(rate) * h;
        long double E = std::exp(-z);
        long double r2h = static_cast<long double>(rate) * rate * h;
        return std::pair<double, double>(
            static_cast<double>((z - 1.0L + E) / r2h),
            static_cast<double>((1.0L - E * (1.0L + z)) / r2h));
    };
    for (double rate : {0.9999e-2, 1.0001e-2}) {
        auto w = exp_panel_weights(rate, 1.0);
        auto [rn, rf] = reference(rate, 1.0);
        CHECK(w.near == doctest::Approx(rn).epsilon(1e-12));
        CHECK(w.far == doctest::Approx(rf).epsilon(1e-12));
    }
}

TEST_CASE("forward damped accumulation against analytic solution") {
    // y(s) = int_0^s exp(-mu (s - t)) dt = (1 - exp(-mu s)) / mu
    double mu = 0.2;
    AgeGrid g(10.0, 4001);
    AgeProfile one(static_cast<std::size_t>(g.n_nodes), 1.0);
    AgeProfile y = forward_exp_convolution(g, one, mu);
    double worst = 0.0;
    for (int i = 0; i < g.n_nodes; ++i) {
        double exact = (1.0 - std::exp(-mu * g.node(i))) / mu;
        worst = std::max(worst, std::abs(y[i] - exact));
    }
    CHECK(worst <= 1e-8);
    CHECK(y[0] == 0.0);
}

TEST_CASE("forward damped accumulation at rate zero is a running integral") {
    AgeGrid g(2.0, 51);
    AgeProfile v(51);
    for (int i = 0; i < 51; ++i) v[i] = g.node(i);
    AgeProfile y = forward_exp_convolution(g, v, 0.0);
    // cumulative trapezoid of t on [0,s] = s^2/2, exact for affine data
    for (int i = 0; i < 51; ++i) {
        double s = g.node(i);
        CHECK(y[i] == doctest::Approx(s * s / 2.0).epsilon(1e-13));
    }
}

TEST_CASE("backward discounted tail against constant-rate closed form") {
    double mu = 0.2, lambda = 0.1, alpha = 3.0, s_bar = 10.0;
    double L = mu + lambda;
    AgeGrid g(s_bar, 4001);
    AgeProfile a(static_cast<std::size_t>(g.n_nodes), alpha);
    AgeProfile tail = backward_discounted_tail(g, a, L);
    double worst = 0.0;
    for (int i = 0; i < g.n_nodes; ++i) {
        double exact = alpha * (1.0 - std::exp(-L * (s_bar - g.node(i)))) / L;
        worst = std::max(worst, std::abs(tail[i] - exact));
    }
    CHECK(worst <= 1e-8);
    CHECK(tail.back() == 0.0);
}

TEST_CASE("increasing root finder solves a plain scalar equation") {
    RootOptions opt;
    double r = find_root_increasing([](double x) { return x * x * x - 8.0; },
                                    opt);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("increasing root finder accepts an infinite left limit") {
    // functions that diverge to -inf at the origin still bracket
    RootOptions opt;
    double r = find_root_increasing(
        [](double x) {
            if (x <= 0.0) return -std::numeric_limits<double>::infinity();
            return x - 1.0 / std::sqrt(x);
        },
        opt);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("increasing root finder reports a missing nonnegative root") {
    RootOptions opt;
    CHECK_THROWS_AS(
        find_root_increasing([](double x) { return x + 2.0; }, opt),
        NoNonnegativeRootError);
}

TEST_CASE("increasing root finder rejects NaN evaluations") {
    RootOptions opt;
    CHECK_THROWS_AS(find_root_increasing(
                        [](double) {
                            return std::numeric_limits<double>::quiet_NaN();
                        },
                        opt),
                    EvaluationError);
}

TEST_CASE("whole-line root finder reaches negative roots") {
    RootOptions opt;
    double r = find_root_increasing_whole_line(
        [](double x) { return x + 2.0; }, opt);
    CHECK(r == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("root refinement keeps the bracket ordered") {
    RootOptions opt;
    double r = refine_root_increasing(
        [](double x) { return std::atan(x - 0.75); }, 0.0, 10.0, opt);
    CHECK(r == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("fixed point iteration stops immediately on a fixed input") {
    AgeProfile x0(5, 2.0);
    auto identity = [](const AgeProfile& x) { return x; };
    auto res = fixed_point_iterate(identity, x0, 1e-10, 50);
    CHECK(res.diagnostics.converged);
    CHECK(res.diagnostics.iterations == 1);
    CHECK(res.profile == x0);
}

TEST_CASE("fixed point iteration contracts a halving map") {
    AgeProfile x0(4, 1.0);
    auto halve = [](const AgeProfile& x) {
        AgeProfile y = x;
        for (auto& v : y) v *= 0.5;
        return y;
    };
    auto res = fixed_point_iterate(halve, x0, 1e-10, 200);
    CHECK(res.diagnostics.converged);
    for (double v : res.profile) CHECK(std::abs(v) <= 2e-10);
    CHECK(res.diagnostics.contraction_estimate ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fixed point iteration reports non-convergence") {
    AgeProfile x0(3, 1.0);
    auto away = [](const AgeProfile& x) {
        AgeProfile y = x;
        for (auto& v : y) v += 1.0;
        return y;
    };
    CHECK_THROWS_AS(fixed_point_iterate(away, x0, 1e-10, 5),
                    NonConvergenceError);
}
