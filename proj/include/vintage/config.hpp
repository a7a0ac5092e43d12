#pragma once

#include <map>
#include <string>
#include <vector>

#include "vintage/grid.hpp"
#include "vintage/model.hpp"

namespace vintage {

struct RunConfig {
    ModelParams params;
    Revenue revenue;
    Cost cost;
    AgeGrid grid;
    double root_tol = 1e-12;
    double fixed_point_tol = 1e-10;
    int max_fixed_point_iter = 200;
    bool verify_compare_printed_forms = true;
    // effective scalar settings, for provenance lines in outputs
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Parses "key = value" lines ('#' starts a comment). Unknown keys, missing
// required keys, type mismatches and constraint violations are collected
// into a single ConfigError. Relative table paths resolve against
// base_dir.
RunConfig parse_config(const std::string& text, const std::string& base_dir);
RunConfig load_config(const std::string& path);

// Two-column numeric table (age, value), one pair per row, comma or
// whitespace separated; ages strictly increasing. An optional single
// header line is skipped.
std::vector<std::pair<double, double>> read_table(const std::string& path);

// Reads a tabulated profile and checks it sits exactly on the grid nodes.
AgeProfile read_grid_profile(const std::string& path, const AgeGrid& grid);

} // namespace vintage
