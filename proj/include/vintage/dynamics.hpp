#pragma once

#include <vector>

#include "vintage/equilibrium.hpp"
#include "vintage/grid.hpp"
#include "vintage/model.hpp"

namespace vintage {

// Controls along a trajectory: either frozen in time or tabulated per
// time step (the time step equals the grid spacing).
struct ControlPath {
    bool constant = true;
    double u0_value = 0.0;
    AgeProfile u1_value;
    std::vector<double> u0_series;       // one entry per time node
    std::vector<AgeProfile> u1_series;   // one profile per time node

    static ControlPath zero();
    static ControlPath frozen(double u0, AgeProfile u1);
    static ControlPath tabulated(std::vector<double> u0,
                                 std::vector<AgeProfile> u1);

    double u0_at(int step) const;
    double u1_at(int step, int node) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<AgeProfile> frames;
};

// Marches the capital density along characteristics with time step equal
// to the grid spacing. t_final must be a whole number of steps. The
// boundary datum is applied on and above the diagonal age = elapsed time,
// so the entry cohort value replaces x0 at age zero from the start.
Trajectory simulate(const AgeProfile& x0, const ControlPath& controls,
                    const ModelParams& params, const AgeGrid& grid,
                    double t_final);

// Shadow value profile at the trajectory time Q_path starts at: node i
// integrates exp(-(mu+lambda)(xi-s_i)) R'(Q(xi-s_i later)) alpha(xi) over
// the remaining lifetime. Q_path must supply one value per grid step and
// cover the whole lookahead window (at least n_nodes entries).
AgeProfile costate_field(const std::vector<double>& Q_path,
                         const ModelParams& params, const Revenue& rev,
                         const AgeGrid& grid);

// Stationarity defects of a candidate solution.
ResidualReport mp_residuals(const EquilibriumSolution& candidate,
                            const ModelParams& params, const Revenue& rev,
                            const Cost& cost, const AgeGrid& grid);

struct ConvergenceSeries {
    std::vector<double> times;
    std::vector<double> sup_errors;
    std::vector<double> weak_errors;
    double max_sup_after_sbar = 0.0;
    double max_weak_after_sbar = 0.0;
};

// Runs the dynamics from x0 under the stationary controls and records the
// distance to the stationary profile over time. t_final must be >= s_bar:
// past that horizon every characteristic has left the age window and the
// errors must sit at rounding level.
ConvergenceSeries convergence_probe(const AgeProfile& x0,
                                    const EquilibriumSolution& eq,
                                    const ModelParams& params,
                                    const AgeGrid& grid, double t_final);

// Sup norm is blind to mass concentrating on spikes, so transient decay
// is also measured weakly: sqrt of the grid integral of the squared
// running primitive of f.
double primitive_weak_norm(const AgeProfile& f, const AgeGrid& grid);

} // namespace vintage
