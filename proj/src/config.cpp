#include "vintage/config.hpp"

#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "vintage/errors.hpp"

namespace vintage {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(c, &end);
    return end != c && *trim(end).c_str() == '\0' && errno != ERANGE;
}

bool parse_int(const std::string& s, int& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(c, &end, 10);
    if (end == c || *trim(end).c_str() != '\0' || errno == ERANGE)
        return false;
    if (v < INT_MIN || v > INT_MAX)
        return false;
    out = static_cast<int>(v);
    return true;
}

// Raw key/value store with per-key consumption tracking so unknown keys
// can be reported at the end.
struct RawConfig {
    std::map<std::string, std::string> entries;
    std::map<std::string, bool> used;
    std::vector<std::string>* issues;

    bool has(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end())
            return false;
        used[key] = true;
        return true;
    }

    std::optional<std::string> get(const std::string& key) {
        if (!has(key))
            return std::nullopt;
        return entries[key];
    }

    std::optional<double> get_double(const std::string& key) {
        auto v = get(key);
        if (!v)
            return std::nullopt;
        double d;
        if (!parse_double(*v, d)) {
            issues->push_back(key + ": not a number: '" + *v + "'");
            return std::nullopt;
        }
        return d;
    }

    double need_double(const std::string& key) {
        auto v = get_double(key);
        if (v)
            return *v;
        if (entries.find(key) == entries.end())
            issues->push_back("missing required key: " + key);
        return NAN;
    }

    std::optional<int> get_int(const std::string& key) {
        auto v = get(key);
        if (!v)
            return std::nullopt;
        int d;
        if (!parse_int(*v, d)) {
            issues->push_back(key + ": not an integer: '" + *v + "'");
            return std::nullopt;
        }
        return d;
    }

    std::optional<bool> get_bool(const std::string& key) {
        auto v = get(key);
        if (!v)
            return std::nullopt;
        if (*v == "true")
            return true;
        if (*v == "false")
            return false;
        issues->push_back(key + ": expected true or false, got '" + *v + "'");
        return std::nullopt;
    }

    void forbid(const std::string& key, const std::string& why) {
        if (entries.find(key) != entries.end()) {
            used[key] = true;
            issues->push_back(key + ": " + why);
        }
    }
};

std::string resolve(const std::string& base_dir, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty())
        return path;
    return (std::filesystem::path(base_dir) / p).string();
}

std::optional<CoefficientProfile>
load_profile(RawConfig& raw, const std::string& const_key,
             const std::string& path_key, const std::string& base_dir,
             std::vector<std::string>& issues) {
    bool has_const = raw.entries.count(const_key) > 0;
    bool has_path = raw.entries.count(path_key) > 0;
    if (has_const && has_path) {
        raw.used[const_key] = raw.used[path_key] = true;
        issues.push_back(const_key + " and " + path_key +
                         " are mutually exclusive");
        return std::nullopt;
    }
    if (has_const) {
        auto v = raw.get_double(const_key);
        if (!v)
            return std::nullopt;
        return CoefficientProfile(*v);
    }
    if (has_path) {
        auto p = raw.get(path_key);
        try {
            auto rows = read_table(resolve(base_dir, *p));
            std::vector<double> ages, values;
            for (auto& [s, v] : rows) {
                ages.push_back(s);
                values.push_back(v);
            }
            return CoefficientProfile(std::move(ages), std::move(values));
        } catch (const std::exception& e) {
            issues.push_back(path_key + ": " + e.what());
            return std::nullopt;
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<std::pair<double, double>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open table file: " + path);

    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        for (char& ch : line)
            if (ch == ',' || ch == '\t' || ch == ';')
                ch = ' ';
        std::istringstream ss(line);
        std::string first, second, extra;
        ss >> first >> second;
        double s, v;
        bool ok = !second.empty() && parse_double(first, s) &&
                  parse_double(second, v) && !(ss >> extra);
        if (!ok) {
            if (rows.empty() && lineno == 1)
                continue; // header line
            throw InputError("malformed table row at " + path + ":" +
                             std::to_string(lineno));
        }
        rows.emplace_back(s, v);
    }
    if (rows.size() < 2)
        throw InputError("table needs at least two rows: " + path);
    return rows;
}

AgeProfile read_grid_profile(const std::string& path, const AgeGrid& grid) {
    auto rows = read_table(path);
    if (static_cast<int>(rows.size()) != grid.n_nodes)
        throw InputError("profile in " + path + " has " +
                         std::to_string(rows.size()) + " rows but the grid has " +
                         std::to_string(grid.n_nodes) + " nodes");
    AgeProfile out(grid.n_nodes);
    double tol = 1e-9 * std::max(1.0, grid.s_bar);
    for (int i = 0; i < grid.n_nodes; ++i) {
        if (std::abs(rows[i].first - grid.node(i)) > tol)
            throw InputError("profile in " + path +
                             " is not sampled on the grid nodes (row " +
                             std::to_string(i + 1) + ")");
        if (!std::isfinite(rows[i].second))
            throw InputError("profile in " + path + " has a non-finite value");
        out[i] = rows[i].second;
    }
    return out;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
    std::vector<std::string> issues;
    RawConfig raw;
    raw.issues = &issues;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) +
                             ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            issues.push_back("line " + std::to_string(lineno) +
                             ": expected key = value");
            continue;
        }
        if (raw.entries.count(key)) {
            issues.push_back("duplicate key: " + key);
            continue;
        }
        raw.entries[key] = value;
    }

    RunConfig cfg;

    cfg.params.mu = raw.need_double("model.mu");
    cfg.params.lambda = raw.need_double("model.lambda");
    cfg.params.s_bar = raw.need_double("model.s_bar");
    auto alpha =
        load_profile(raw, "model.alpha", "model.alpha_path", base_dir, issues);
    if (alpha)
        cfg.params.productivity = *alpha;
    else if (!raw.entries.count("model.alpha") &&
             !raw.entries.count("model.alpha_path"))
        issues.push_back("missing required key: model.alpha or model.alpha_path");

    auto rkind = raw.get("revenue.kind");
    if (!rkind) {
        issues.push_back("missing required key: revenue.kind");
    } else if (*rkind == "quadratic") {
        cfg.revenue = Revenue::quadratic(raw.need_double("revenue.a"),
                                         raw.need_double("revenue.b"));
        raw.forbid("revenue.gamma", "not a parameter of quadratic revenue");
        raw.forbid("revenue.nu", "not a parameter of quadratic revenue");
    } else if (*rkind == "log") {
        cfg.revenue = Revenue::log();
        raw.forbid("revenue.a", "not a parameter of log revenue");
        raw.forbid("revenue.b", "not a parameter of log revenue");
        raw.forbid("revenue.gamma", "not a parameter of log revenue");
        raw.forbid("revenue.nu", "not a parameter of log revenue");
    } else if (*rkind == "power") {
        cfg.revenue = Revenue::power(raw.need_double("revenue.b"),
                                     raw.need_double("revenue.gamma"),
                                     raw.need_double("revenue.nu"));
        raw.forbid("revenue.a", "not a parameter of power revenue");
    } else if (*rkind == "pure_power") {
        cfg.revenue = Revenue::pure_power(raw.need_double("revenue.b"),
                                          raw.need_double("revenue.gamma"));
        raw.forbid("revenue.a", "not a parameter of pure power revenue");
        raw.forbid("revenue.nu", "not a parameter of pure power revenue");
    } else if (*rkind == "linear") {
        cfg.revenue = Revenue::linear(raw.need_double("revenue.b"));
        raw.forbid("revenue.a", "not a parameter of linear revenue");
        raw.forbid("revenue.gamma", "not a parameter of linear revenue");
        raw.forbid("revenue.nu", "not a parameter of linear revenue");
    } else {
        issues.push_back("revenue.kind: unknown kind '" + *rkind + "'");
    }

    auto ckind = raw.get("cost.kind");
    double beta0 = raw.need_double("cost.beta0");
    auto beta1 =
        load_profile(raw, "cost.beta1", "cost.beta1_path", base_dir, issues);
    double q0 = raw.get_double("cost.q0").value_or(0.0);

    int q1_specs = (raw.entries.count("cost.q1") ? 1 : 0) +
                   (raw.entries.count("cost.q1_path") ? 1 : 0) +
                   (raw.entries.count("cost.w") ? 1 : 0);
    std::optional<double> q1_decay;
    CoefficientProfile q1(0.0);
    if (q1_specs > 1) {
        raw.used["cost.q1"] = raw.used["cost.q1_path"] = raw.used["cost.w"] = true;
        issues.push_back("cost.q1, cost.q1_path and cost.w are mutually "
                         "exclusive");
    } else if (raw.entries.count("cost.w")) {
        q1_decay = raw.get_double("cost.w").value_or(NAN);
    } else {
        auto p = load_profile(raw, "cost.q1", "cost.q1_path", base_dir, issues);
        if (p)
            q1 = *p;
    }

    CoefficientProfile b1 = beta1 ? *beta1 : CoefficientProfile(beta0);
    if (!ckind) {
        issues.push_back("missing required key: cost.kind");
    } else if (*ckind == "linquad") {
        cfg.cost = q1_decay ? Cost::lin_quad_decay(beta0, b1, q0, *q1_decay)
                            : Cost::lin_quad(beta0, b1, q0, q1);
        raw.forbid("cost.M0", "not a parameter of linquad cost");
        raw.forbid("cost.M1", "not a parameter of linquad cost");
        raw.forbid("cost.p", "not a parameter of linquad cost");
        raw.forbid("cost.theta", "not a parameter of linquad cost");
    } else if (*ckind == "constrained_linquad") {
        cfg.cost = Cost::constrained_lin_quad(beta0, b1, q0, q1,
                                              raw.need_double("cost.M0"),
                                              raw.need_double("cost.M1"));
        cfg.cost.q1_decay_rate = q1_decay;
        raw.forbid("cost.p", "not a parameter of constrained_linquad cost");
        raw.forbid("cost.theta", "not a parameter of constrained_linquad cost");
    } else if (*ckind == "linpower") {
        cfg.cost = Cost::lin_power(beta0, b1, q0, q1, raw.need_double("cost.p"),
                                   raw.get_double("cost.theta").value_or(0.0));
        cfg.cost.q1_decay_rate = q1_decay;
        raw.forbid("cost.M0", "not a parameter of linpower cost");
        raw.forbid("cost.M1", "not a parameter of linpower cost");
    } else {
        issues.push_back("cost.kind: unknown kind '" + *ckind + "'");
    }

    int n_nodes = raw.get_int("grid.n_nodes").value_or(2001);
    cfg.root_tol = raw.get_double("grid.root_tol").value_or(1e-12);
    cfg.fixed_point_tol = raw.get_double("grid.fixed_point_tol").value_or(1e-10);
    cfg.max_fixed_point_iter =
        raw.get_int("grid.max_fixed_point_iter").value_or(200);
    cfg.verify_compare_printed_forms =
        raw.get_bool("verify.compare_printed_forms").value_or(true);

    if (!(cfg.root_tol > 0.0))
        issues.push_back("grid.root_tol must be positive");
    if (!(cfg.fixed_point_tol > 0.0))
        issues.push_back("grid.fixed_point_tol must be positive");
    if (cfg.max_fixed_point_iter < 1)
        issues.push_back("grid.max_fixed_point_iter must be positive");

    for (auto& [key, value] : raw.entries)
        if (!raw.used.count(key) || !raw.used[key])
            issues.push_back("unknown key: " + key);

    bool grid_ok = std::isfinite(cfg.params.s_bar) && cfg.params.s_bar > 0.0 &&
                   n_nodes >= 2;
    if (!grid_ok) {
        if (n_nodes < 2)
            issues.push_back("grid.n_nodes must be at least 2");
    } else {
        cfg.grid = AgeGrid(cfg.params.s_bar, n_nodes);
        for (auto& s : cfg.cost.validate(cfg.grid))
            issues.push_back(std::move(s));
    }
    for (auto& s : cfg.params.validate())
        issues.push_back(std::move(s));
    for (auto& s : cfg.revenue.validate())
        issues.push_back(std::move(s));

    if (!issues.empty())
        throw ConfigError(std::move(issues));

    for (auto& [key, value] : raw.entries)
        cfg.provenance.emplace_back(key, value);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file: " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(),
                        std::filesystem::path(path).parent_path().string());
}

} // namespace vintage
