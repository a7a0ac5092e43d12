#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vintage/config.hpp"

namespace vintage {

struct SimulateOptions {
    double t_final = 0.0;
    std::string x0 = "equilibrium"; // "equilibrium", "zero" or a table path
    std::string controls;           // optional controls table path
};

struct SweepOptions {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 0; // number of panels; steps+1 values
};

struct VerifyOptions {
    double tol = 1e-8;
};

struct FiguresOptions {
    double alpha3 = 12.0;
    double alpha4 = 24.0;
};

// Each command writes its CSV outputs into out_dir and throws on failure;
// the CLI maps exception classes to exit codes (0 success, 2 bad
// configuration or input, 3 solver non-convergence, 4 verification
// failure).
void cmd_equilibrium(const RunConfig& cfg, const std::string& out_dir);
void cmd_simulate(const RunConfig& cfg, const std::string& out_dir,
                  const SimulateOptions& opts);
void cmd_sweep(const RunConfig& cfg, const std::string& out_dir,
               const SweepOptions& opts);
void cmd_verify(const RunConfig& cfg, const std::string& out_dir,
                const VerifyOptions& opts);
void cmd_figures(const RunConfig& cfg, const std::string& out_dir,
                 const FiguresOptions& opts);

int run_cli(int argc, char** argv);

} // namespace vintage
