#pragma once

#include <vector>

namespace vintage {

// A profile holds one value per grid node.
using AgeProfile = std::vector<double>;

// Uniform grid of machine ages on [0, s_bar].
struct AgeGrid {
    double s_bar = 0.0;
    int n_nodes = 0;

    AgeGrid() = default;
    AgeGrid(double s_bar, int n_nodes);

    double ds() const { return s_bar / (n_nodes - 1); }
    double node(int i) const {
        return s_bar * static_cast<double>(i) / (n_nodes - 1);
    }
    std::vector<double> nodes() const;
};

// Piecewise-linear evaluation of a grid profile. Ages outside [0, s_bar]
// are a domain error.
double interp_linear(const AgeGrid& grid, const AgeProfile& values, double s);

double sup_norm(const AgeProfile& values);
double sup_distance(const AgeProfile& a, const AgeProfile& b);

} // namespace vintage
