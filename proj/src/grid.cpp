#include "vintage/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vintage/errors.hpp"

namespace vintage {

AgeGrid::AgeGrid(double s_bar, int n_nodes) : s_bar(s_bar), n_nodes(n_nodes) {
    if (!(s_bar > 0.0) || !std::isfinite(s_bar))
        throw std::invalid_argument("AgeGrid: s_bar must be positive");
    if (n_nodes < 2)
        throw std::invalid_argument("AgeGrid: need at least two nodes");
}

std::vector<double> AgeGrid::nodes() const {
    std::vector<double> s(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        s[i] = node(i);
    return s;
}

double interp_linear(const AgeGrid& grid, const AgeProfile& values, double s) {
    if (static_cast<int>(values.size()) != grid.n_nodes)
        throw std::invalid_argument("interp_linear: profile size does not match grid");
    if (s < 0.0 || s > grid.s_bar || !std::isfinite(s))
        throw DomainError("interp_linear: age outside [0, s_bar]");
    double pos = s / grid.ds();
    int i = std::min(static_cast<int>(pos), grid.n_nodes - 2);
    double t = pos - i;
    return values[i] + t * (values[i + 1] - values[i]);
}

double sup_norm(const AgeProfile& values) {
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const AgeProfile& a, const AgeProfile& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sup_distance: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace vintage
