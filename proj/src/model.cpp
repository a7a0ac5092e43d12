#include "vintage/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vintage/errors.hpp"

namespace vintage {

CoefficientProfile::CoefficientProfile(std::vector<double> ages,
                                       std::vector<double> values)
    : ages_(std::move(ages)), values_(std::move(values)) {
    if (ages_.size() != values_.size() || ages_.size() < 2)
        throw std::invalid_argument("CoefficientProfile: table needs matching "
                                    "age/value columns with at least two rows");
    for (std::size_t i = 0; i < ages_.size(); ++i) {
        if (!std::isfinite(ages_[i]) || !std::isfinite(values_[i]))
            throw std::invalid_argument("CoefficientProfile: non-finite table entry");
        if (i > 0 && ages_[i] <= ages_[i - 1])
            throw std::invalid_argument("CoefficientProfile: ages must be strictly "
                                        "increasing");
    }
}

double CoefficientProfile::constant_value() const {
    if (!is_constant())
        throw std::invalid_argument("CoefficientProfile: not a constant");
    return constant_;
}

double CoefficientProfile::operator()(double s) const {
    if (is_constant())
        return constant_;
    if (s < ages_.front() || s > ages_.back())
        throw DomainError("CoefficientProfile: age outside the tabulated range");
    auto it = std::upper_bound(ages_.begin(), ages_.end(), s);
    std::size_t i = it == ages_.end() ? ages_.size() - 2 : (it - ages_.begin()) - 1;
    double t = (s - ages_[i]) / (ages_[i + 1] - ages_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

AgeProfile CoefficientProfile::sample(const AgeGrid& grid) const {
    AgeProfile out(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i)
        out[i] = (*this)(grid.node(i));
    return out;
}

double CoefficientProfile::min_on(const AgeGrid& grid) const {
    if (is_constant())
        return constant_;
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n_nodes; ++i)
        m = std::min(m, (*this)(grid.node(i)));
    // A linear table can only dip below the node values at its own knots.
    for (std::size_t k = 0; k < ages_.size(); ++k)
        if (ages_[k] >= 0.0 && ages_[k] <= grid.s_bar)
            m = std::min(m, values_[k]);
    return m;
}

bool CoefficientProfile::covers(double lo, double hi) const {
    if (is_constant())
        return true;
    return ages_.front() <= lo && ages_.back() >= hi;
}

std::vector<std::string> ModelParams::validate() const {
    std::vector<std::string> issues;
    if (!(mu > 0.0) || !std::isfinite(mu))
        issues.push_back("model.mu must be positive");
    if (!std::isfinite(lambda))
        issues.push_back("model.lambda must be finite");
    if (!(s_bar > 0.0) || !std::isfinite(s_bar))
        issues.push_back("model.s_bar must be positive");
    if (std::isfinite(mu) && std::isfinite(lambda) && !(mu + lambda > 0.0))
        issues.push_back("model.mu + model.lambda must be positive");
    if (std::isfinite(s_bar) && s_bar > 0.0 && !productivity.covers(0.0, s_bar))
        issues.push_back("model.alpha table does not cover [0, s_bar]");
    return issues;
}

Revenue Revenue::quadratic(double a, double b) {
    Revenue r;
    r.kind = RevenueKind::Quadratic;
    r.a = a;
    r.b = b;
    return r;
}

Revenue Revenue::log() {
    Revenue r;
    r.kind = RevenueKind::Log;
    return r;
}

Revenue Revenue::power(double b, double gamma, double nu) {
    Revenue r;
    r.kind = RevenueKind::Power;
    r.b = b;
    r.gamma = gamma;
    r.nu = nu;
    return r;
}

Revenue Revenue::pure_power(double b, double gamma) {
    Revenue r;
    r.kind = RevenueKind::PurePower;
    r.b = b;
    r.gamma = gamma;
    return r;
}

Revenue Revenue::linear(double b) {
    Revenue r;
    r.kind = RevenueKind::Linear;
    r.b = b;
    return r;
}

std::vector<std::string> Revenue::validate() const {
    std::vector<std::string> issues;
    switch (kind) {
    case RevenueKind::Quadratic:
        if (!(a >= 0.0) || !std::isfinite(a))
            issues.push_back("revenue.a must be nonnegative");
        if (!std::isfinite(b))
            issues.push_back("revenue.b must be finite");
        break;
    case RevenueKind::Log:
        break;
    case RevenueKind::Power:
        if (!(b > 0.0) || !std::isfinite(b))
            issues.push_back("revenue.b must be positive");
        if (!(gamma > 0.0 && gamma < 1.0))
            issues.push_back("revenue.gamma must lie in (0, 1)");
        if (!(nu > 0.0) || !std::isfinite(nu))
            issues.push_back("revenue.nu must be positive");
        break;
    case RevenueKind::PurePower:
        if (!(b > 0.0) || !std::isfinite(b))
            issues.push_back("revenue.b must be positive");
        if (!(gamma > 0.0 && gamma < 1.0))
            issues.push_back("revenue.gamma must lie in (0, 1)");
        break;
    case RevenueKind::Linear:
        if (!std::isfinite(b))
            issues.push_back("revenue.b must be finite");
        break;
    }
    return issues;
}

double revenue_value(const Revenue& rev, double Q) {
    switch (rev.kind) {
    case RevenueKind::Quadratic:
        return rev.b * Q - rev.a * Q * Q;
    case RevenueKind::Log:
        return Q >= 0.0 ? std::log1p(Q) : Q;
    case RevenueKind::Power:
        if (Q >= 0.0)
            return rev.b * (std::pow(rev.nu + Q, rev.gamma) -
                            std::pow(rev.nu, rev.gamma));
        return rev.b * rev.gamma * std::pow(rev.nu, rev.gamma - 1.0) * Q;
    case RevenueKind::PurePower:
        if (Q < 0.0)
            throw DomainError("revenue_value: negative output under pure power "
                              "revenue");
        return rev.b * std::pow(Q, rev.gamma);
    case RevenueKind::Linear:
        return rev.b * Q;
    }
    throw std::logic_error("revenue_value: unknown kind");
}

double revenue_slope(const Revenue& rev, double Q) {
    switch (rev.kind) {
    case RevenueKind::Quadratic:
        return rev.b - 2.0 * rev.a * Q;
    case RevenueKind::Log:
        return Q >= 0.0 ? 1.0 / (1.0 + Q) : 1.0;
    case RevenueKind::Power:
        if (Q >= 0.0)
            return rev.b * rev.gamma * std::pow(rev.nu + Q, rev.gamma - 1.0);
        return rev.b * rev.gamma * std::pow(rev.nu, rev.gamma - 1.0);
    case RevenueKind::PurePower:
        if (Q < 0.0)
            throw DomainError("revenue_slope: negative output under pure power "
                              "revenue");
        if (Q == 0.0)
            return std::numeric_limits<double>::infinity();
        return rev.b * rev.gamma * std::pow(Q, rev.gamma - 1.0);
    case RevenueKind::Linear:
        return rev.b;
    }
    throw std::logic_error("revenue_slope: unknown kind");
}

Cost Cost::lin_quad(double beta0, CoefficientProfile beta1, double q0,
                    CoefficientProfile q1) {
    Cost c;
    c.kind = CostKind::LinQuad;
    c.beta0 = beta0;
    c.beta1 = std::move(beta1);
    c.q0 = q0;
    c.q1 = std::move(q1);
    return c;
}

Cost Cost::lin_quad_decay(double beta0, CoefficientProfile beta1, double q0,
                          double decay) {
    Cost c;
    c.kind = CostKind::LinQuad;
    c.beta0 = beta0;
    c.beta1 = std::move(beta1);
    c.q0 = q0;
    c.q1_decay_rate = decay;
    return c;
}

Cost Cost::constrained_lin_quad(double beta0, CoefficientProfile beta1, double q0,
                                CoefficientProfile q1, double M0, double M1) {
    Cost c;
    c.kind = CostKind::ConstrainedLinQuad;
    c.beta0 = beta0;
    c.beta1 = std::move(beta1);
    c.q0 = q0;
    c.q1 = std::move(q1);
    c.M0 = M0;
    c.M1 = M1;
    return c;
}

Cost Cost::lin_power(double beta0, CoefficientProfile beta1, double q0,
                     CoefficientProfile q1, double p, double theta) {
    Cost c;
    c.kind = CostKind::LinPower;
    c.beta0 = beta0;
    c.beta1 = std::move(beta1);
    c.q0 = q0;
    c.q1 = std::move(q1);
    c.p = p;
    c.theta = theta;
    return c;
}

double Cost::q1_at(double s) const {
    if (q1_decay_rate)
        return q0 * std::exp(-*q1_decay_rate * s);
    return q1(s);
}

double Cost::beta1_at(double s) const { return beta1(s); }

std::vector<std::string> Cost::validate(const AgeGrid& grid) const {
    std::vector<std::string> issues;
    if (!(beta0 > 0.0) || !std::isfinite(beta0))
        issues.push_back("cost.beta0 must be positive");
    if (!beta1.covers(0.0, grid.s_bar))
        issues.push_back("cost.beta1 table does not cover [0, s_bar]");
    else if (!(beta1.min_on(grid) > 0.0))
        issues.push_back("cost.beta1 must be positive on [0, s_bar]");
    if (!std::isfinite(q0))
        issues.push_back("cost.q0 must be finite");
    if (!q1_decay_rate && !q1.covers(0.0, grid.s_bar))
        issues.push_back("cost.q1 table does not cover [0, s_bar]");
    if (q1_decay_rate && !std::isfinite(*q1_decay_rate))
        issues.push_back("cost.w must be finite");
    if (kind == CostKind::ConstrainedLinQuad) {
        if (!(M0 > 0.0) || !std::isfinite(M0))
            issues.push_back("cost.M0 must be positive");
        if (!(M1 > 0.0) || !std::isfinite(M1))
            issues.push_back("cost.M1 must be positive");
    }
    if (kind == CostKind::LinPower) {
        if (!(p > 2.0) || !std::isfinite(p))
            issues.push_back("cost.p must exceed 2");
        if (!(theta >= 0.0) || !std::isfinite(theta))
            issues.push_back("cost.theta must be nonnegative");
    }
    return issues;
}

namespace {

double quad_maximiser(double v, double q, double beta) {
    return (v - q) / (2.0 * beta);
}

// Maximiser of v*u - q*u - beta*|u + theta|^p + beta*theta^p over u; the
// shift keeps the cost zero at u = 0 and the kink makes small incentives
// produce exactly nothing.
double power_maximiser(double v, double q, double beta, double p, double theta) {
    double drive = v - q;
    double kink = beta * p * std::pow(theta, p - 1.0);
    if (drive <= kink)
        return 0.0;
    return std::pow(drive / (beta * p), 1.0 / (p - 1.0)) - theta;
}

} // namespace

double conj0_prime(const Cost& cost, double v) {
    switch (cost.kind) {
    case CostKind::LinQuad:
        return quad_maximiser(v, cost.q0, cost.beta0);
    case CostKind::ConstrainedLinQuad:
        return std::clamp(quad_maximiser(v, cost.q0, cost.beta0), -cost.M0,
                          cost.M0);
    case CostKind::LinPower:
        return power_maximiser(v, cost.q0, cost.beta0, cost.p, cost.theta);
    }
    throw std::logic_error("conj0_prime: unknown kind");
}

double conj1_prime(const Cost& cost, double s, double v, double s_bar) {
    if (s < 0.0 || s > s_bar || !std::isfinite(s))
        throw DomainError("conj1_prime: age outside [0, s_bar]");
    double q = cost.q1_at(s);
    double beta = cost.beta1_at(s);
    switch (cost.kind) {
    case CostKind::LinQuad:
        return quad_maximiser(v, q, beta);
    case CostKind::ConstrainedLinQuad:
        return std::clamp(quad_maximiser(v, q, beta), -cost.M1, cost.M1);
    case CostKind::LinPower:
        return power_maximiser(v, q, beta, cost.p, cost.theta);
    }
    throw std::logic_error("conj1_prime: unknown kind");
}

} // namespace vintage
