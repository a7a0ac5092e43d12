#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vintage/grid.hpp"

namespace vintage {

// An age-dependent coefficient: either a constant or a tabulated curve
// evaluated by linear interpolation. Tables must cover the full age range
// they are asked about.
class CoefficientProfile {
public:
    CoefficientProfile() : constant_(0.0) {}
    explicit CoefficientProfile(double constant) : constant_(constant) {}
    CoefficientProfile(std::vector<double> ages, std::vector<double> values);

    bool is_constant() const { return ages_.empty(); }
    double constant_value() const;
    double operator()(double s) const;
    AgeProfile sample(const AgeGrid& grid) const;
    double min_on(const AgeGrid& grid) const;

    // [lo, hi] for tables, unbounded for constants.
    bool covers(double lo, double hi) const;

private:
    double constant_ = 0.0;
    std::vector<double> ages_;
    std::vector<double> values_;
};

struct ModelParams {
    double mu = 0.0;     // depreciation rate, > 0
    double lambda = 0.0; // discount rate, mu + lambda > 0
    double s_bar = 0.0;  // scrapping age, > 0
    CoefficientProfile productivity{1.0};

    std::vector<std::string> validate() const;
};

enum class RevenueKind { Quadratic, Log, Power, PurePower, Linear };

// Concave revenue of aggregate output. Quadratic: b*Q - a*Q^2. Log:
// ln(1+Q) continued by Q below zero. Power: b*((nu+Q)^gamma - nu^gamma)
// continued linearly below zero. PurePower: b*Q^gamma on [0, inf) only.
// Linear: b*Q.
struct Revenue {
    RevenueKind kind = RevenueKind::Linear;
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
    double nu = 0.0;

    static Revenue quadratic(double a, double b);
    static Revenue log();
    static Revenue power(double b, double gamma, double nu);
    static Revenue pure_power(double b, double gamma);
    static Revenue linear(double b);

    std::vector<std::string> validate() const;
};

double revenue_value(const Revenue& rev, double Q);
double revenue_slope(const Revenue& rev, double Q);

enum class CostKind { LinQuad, ConstrainedLinQuad, LinPower };

// Adjustment cost of the two controls. All kinds share a linear part with
// slopes q0 (new machines) and q1(s) (existing machines of age s); q1 may
// be constant, tabulated, or tied to q0 through an exponential decay
// q1(s) = q0*exp(-decay*s).
//
// LinQuad adds beta0*u^2 and beta1(s)*u^2. ConstrainedLinQuad is LinQuad
// with the maximiser clamped to [-M, M]. LinPower adds beta*|u+theta|^p
// with p > 2, shifted so nothing is spent below trade volume theta.
struct Cost {
    CostKind kind = CostKind::LinQuad;
    double beta0 = 0.0;
    double q0 = 0.0;
    CoefficientProfile beta1{0.0};
    CoefficientProfile q1{0.0};
    std::optional<double> q1_decay_rate;
    double M0 = 0.0;
    double M1 = 0.0;
    double p = 0.0;
    double theta = 0.0;

    static Cost lin_quad(double beta0, CoefficientProfile beta1, double q0,
                         CoefficientProfile q1);
    static Cost lin_quad_decay(double beta0, CoefficientProfile beta1, double q0,
                               double decay);
    static Cost constrained_lin_quad(double beta0, CoefficientProfile beta1,
                                     double q0, CoefficientProfile q1, double M0,
                                     double M1);
    static Cost lin_power(double beta0, CoefficientProfile beta1, double q0,
                          CoefficientProfile q1, double p, double theta);

    double q1_at(double s) const;
    double beta1_at(double s) const;

    std::vector<std::string> validate(const AgeGrid& grid) const;
};

// Maximiser of v*u - cost(u) over u, for the boundary control (age-free)
// and the distributed control at age s. Ages outside [0, s_bar] are a
// domain error.
double conj0_prime(const Cost& cost, double v);
double conj1_prime(const Cost& cost, double s, double v, double s_bar);

} // namespace vintage
