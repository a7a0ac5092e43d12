#pragma once

#include "vintage/grid.hpp"

namespace vintage {

// Weights of the product rule for one grid panel of width h against the
// kernel exp(-rate*d), where d is the distance from the panel end at which
// the kernel equals one. "near" multiplies the integrand at that end,
// "far" the integrand at the other end (kernel exp(-rate*h) there). The
// rule integrates the linear interpolant of the integrand exactly, so
// constant and affine integrands carry no error at all.
struct ExpPanelWeights {
    double decay; // exp(-rate*h)
    double near;
    double far;
};

ExpPanelWeights exp_panel_weights(double rate, double h);

// Composite trapezoid over the whole grid.
double trapezoid(const AgeGrid& grid, const AgeProfile& values);

// out[i] = integral over [0, s_i] of exp(-rate*(s_i - sigma)) g(sigma).
// Built panel by panel: out[i+1] = decay*out[i] + near*g[i+1] + far*g[i].
AgeProfile forward_exp_convolution(const AgeGrid& grid, const AgeProfile& g,
                                   double rate);

// out[i] = integral over [s_i, s_bar] of exp(-rate*(sigma - s_i)) a(sigma).
// Accumulated from the far end: out[i] = decay*out[i+1] + near*a[i] + far*a[i+1].
AgeProfile backward_discounted_tail(const AgeGrid& grid, const AgeProfile& a,
                                    double rate);

} // namespace vintage
