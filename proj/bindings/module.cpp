#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vintage/dynamics.hpp"
#include "vintage/equilibrium.hpp"
#include "vintage/sensitivity.hpp"

namespace py = pybind11;
using namespace vintage;

PYBIND11_MODULE(_core, m) {
    m.doc() = "vintage capital equilibrium toolkit";

    py::class_<AgeGrid>(m, "AgeGrid")
        .def(py::init<double, int>(), py::arg("s_bar"), py::arg("n_nodes"))
        .def_readonly("s_bar", &AgeGrid::s_bar)
        .def_readonly("n_nodes", &AgeGrid::n_nodes)
        .def("ds", &AgeGrid::ds)
        .def("nodes", &AgeGrid::nodes);

    py::class_<CoefficientProfile>(m, "CoefficientProfile")
        .def(py::init<double>(), py::arg("constant"))
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("ages"), py::arg("values"))
        .def("__call__", &CoefficientProfile::operator());

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double mu, double lambda, double s_bar, double alpha) {
                 ModelParams p;
                 p.mu = mu;
                 p.lambda = lambda;
                 p.s_bar = s_bar;
                 p.productivity = CoefficientProfile(alpha);
                 return p;
             }),
             py::arg("mu"), py::arg("lambda_"), py::arg("s_bar"),
             py::arg("alpha"))
        .def_readwrite("mu", &ModelParams::mu)
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("s_bar", &ModelParams::s_bar)
        .def_readwrite("productivity", &ModelParams::productivity);

    py::class_<Revenue>(m, "Revenue")
        .def_static("quadratic", &Revenue::quadratic, py::arg("a"), py::arg("b"))
        .def_static("log", &Revenue::log)
        .def_static("power", &Revenue::power, py::arg("b"), py::arg("gamma"),
                    py::arg("nu"))
        .def_static("pure_power", &Revenue::pure_power, py::arg("b"),
                    py::arg("gamma"))
        .def_static("linear", &Revenue::linear, py::arg("b"));

    py::class_<Cost>(m, "Cost")
        .def_static(
            "lin_quad",
            [](double beta0, double beta1, double q0, double q1) {
                return Cost::lin_quad(beta0, CoefficientProfile(beta1), q0,
                                      CoefficientProfile(q1));
            },
            py::arg("beta0"), py::arg("beta1"), py::arg("q0"), py::arg("q1"))
        .def_static(
            "lin_quad_decay",
            [](double beta0, double beta1, double q0, double decay) {
                return Cost::lin_quad_decay(beta0, CoefficientProfile(beta1), q0,
                                            decay);
            },
            py::arg("beta0"), py::arg("beta1"), py::arg("q0"), py::arg("decay"))
        .def_static(
            "constrained_lin_quad",
            [](double beta0, double beta1, double q0, double q1, double M0,
               double M1) {
                return Cost::constrained_lin_quad(beta0,
                                                  CoefficientProfile(beta1), q0,
                                                  CoefficientProfile(q1), M0, M1);
            },
            py::arg("beta0"), py::arg("beta1"), py::arg("q0"), py::arg("q1"),
            py::arg("M0"), py::arg("M1"))
        .def_static(
            "lin_power",
            [](double beta0, double beta1, double q0, double q1, double p,
               double theta) {
                return Cost::lin_power(beta0, CoefficientProfile(beta1), q0,
                                       CoefficientProfile(q1), p, theta);
            },
            py::arg("beta0"), py::arg("beta1"), py::arg("q0"), py::arg("q1"),
            py::arg("p"), py::arg("theta"));

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("r_T", &ResidualReport::r_T)
        .def_readonly("r_zeta", &ResidualReport::r_zeta)
        .def_readonly("r_u0", &ResidualReport::r_u0)
        .def_readonly("r_u1", &ResidualReport::r_u1)
        .def_readonly("theta_at_eta", &ResidualReport::theta_at_eta)
        .def("max", &ResidualReport::max);

    py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
        .def_readonly("eta", &EquilibriumSolution::eta)
        .def_readonly("Q_star", &EquilibriumSolution::Q_star)
        .def_readonly("u0_bar", &EquilibriumSolution::u0_bar)
        .def_readonly("K_bar", &EquilibriumSolution::K_bar)
        .def_readonly("zeta_bar", &EquilibriumSolution::zeta_bar)
        .def_readonly("u1_bar", &EquilibriumSolution::u1_bar)
        .def_readonly("residuals", &EquilibriumSolution::residuals)
        .def_readonly("min_K", &EquilibriumSolution::min_K)
        .def_readonly("nonneg", &EquilibriumSolution::nonneg)
        .def_readonly("uniqueness_not_covered",
                      &EquilibriumSolution::uniqueness_not_covered)
        .def_readonly("warnings", &EquilibriumSolution::warnings);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("frames", &Trajectory::frames);

    py::class_<PeakInfo>(m, "PeakInfo")
        .def_readonly("s_peak", &PeakInfo::s_peak)
        .def_readonly("index", &PeakInfo::index)
        .def_readonly("single_peaked", &PeakInfo::single_peaked);

    py::class_<SStarResult>(m, "SStarResult")
        .def_readonly("value", &SStarResult::value)
        .def_readonly("regime_ok", &SStarResult::regime_ok)
        .def_readonly("warning", &SStarResult::warning);

    m.def("discounted_return", &discounted_return, py::arg("params"),
          py::arg("grid"));
    m.def("F_of_eta", &F_of_eta, py::arg("eta"), py::arg("params"),
          py::arg("cost"), py::arg("grid"));
    m.def("theta_of_eta", &theta_of_eta, py::arg("eta"), py::arg("params"),
          py::arg("revenue"), py::arg("cost"), py::arg("grid"));
    m.def("solve_equilibrium", &solve_equilibrium, py::arg("params"),
          py::arg("revenue"), py::arg("cost"), py::arg("grid"),
          py::arg("tol") = 1e-12);
    m.def("apply_T", &apply_T, py::arg("x"), py::arg("params"),
          py::arg("revenue"), py::arg("cost"), py::arg("grid"));
    m.def("lq_profiles", &lq_profiles, py::arg("params"), py::arg("cost"),
          py::arg("grid"));
    m.def("lq_coefficients", &lq_coefficients, py::arg("w1"), py::arg("w2"),
          py::arg("params"), py::arg("grid"));
    m.def("closed_form_eta", &closed_form_eta, py::arg("revenue"),
          py::arg("c1"), py::arg("c2"));
    m.def(
        "simulate",
        [](const AgeProfile& x0, double u0, const AgeProfile& u1,
           const ModelParams& params, const AgeGrid& grid, double t_final) {
            return simulate(x0, ControlPath::frozen(u0, u1), params, grid,
                            t_final);
        },
        py::arg("x0"), py::arg("u0"), py::arg("u1"), py::arg("params"),
        py::arg("grid"), py::arg("t_final"));
    m.def("costate_field", &costate_field, py::arg("Q_path"), py::arg("params"),
          py::arg("revenue"), py::arg("grid"));
    m.def("primitive_weak_norm", &primitive_weak_norm, py::arg("f"),
          py::arg("grid"));
    m.def("peak_age", &peak_age, py::arg("values"), py::arg("grid"));
    m.def("s_star_analytic", &s_star_analytic, py::arg("params"),
          py::arg("cost"));
    m.def("power_eta", &power_eta, py::arg("alpha"), py::arg("params"),
          py::arg("revenue"), py::arg("cost"), py::arg("grid"));
}
