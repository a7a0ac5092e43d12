#include "vintage/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vintage {

ExpPanelWeights exp_panel_weights(double rate, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("exp_panel_weights: panel width must be positive");
    double z = rate * h;
    double E = std::exp(-z);
    if (std::abs(z) < 1e-2) {
        // Series in z; the closed forms below lose digits to cancellation.
        double wn = h * (1.0 / 2 - z / 6 + z * z / 24 - z * z * z / 120 +
                         z * z * z * z / 720 - z * z * z * z * z / 5040);
        double wf = h * (1.0 / 2 - z / 3 + z * z / 8 - z * z * z / 30 +
                         z * z * z * z / 144 - z * z * z * z * z / 840);
        return {E, wn, wf};
    }
    double wn = (z - 1.0 + E) / (rate * rate * h);
    double wf = (1.0 - E * (1.0 + z)) / (rate * rate * h);
    return {E, wn, wf};
}

double trapezoid(const AgeGrid& grid, const AgeProfile& values) {
    if (static_cast<int>(values.size()) != grid.n_nodes)
        throw std::invalid_argument("trapezoid: profile size does not match grid");
    double h = grid.ds();
    double acc = 0.0;
    for (int i = 0; i + 1 < grid.n_nodes; ++i)
        acc += 0.5 * h * (values[i] + values[i + 1]);
    return acc;
}

AgeProfile forward_exp_convolution(const AgeGrid& grid, const AgeProfile& g,
                                   double rate) {
    if (static_cast<int>(g.size()) != grid.n_nodes)
        throw std::invalid_argument("forward_exp_convolution: profile size mismatch");
    auto [E, wn, wf] = exp_panel_weights(rate, grid.ds());
    AgeProfile out(grid.n_nodes);
    out[0] = 0.0;
    for (int i = 0; i + 1 < grid.n_nodes; ++i)
        out[i + 1] = E * out[i] + wn * g[i + 1] + wf * g[i];
    return out;
}

AgeProfile backward_discounted_tail(const AgeGrid& grid, const AgeProfile& a,
                                    double rate) {
    if (static_cast<int>(a.size()) != grid.n_nodes)
        throw std::invalid_argument("backward_discounted_tail: profile size mismatch");
    auto [E, wn, wf] = exp_panel_weights(rate, grid.ds());
    AgeProfile out(grid.n_nodes);
    out[grid.n_nodes - 1] = 0.0;
    for (int i = grid.n_nodes - 2; i >= 0; --i)
        out[i] = E * out[i + 1] + wn * a[i] + wf * a[i + 1];
    return out;
}

} // namespace vintage
