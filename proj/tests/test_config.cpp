#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "vintage/config.hpp"
#include "vintage/errors.hpp"

using namespace vintage;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "vintage_cfg_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    return p.string();
}

const char* kReference = R"(# reference configuration
model.mu = 0.2
model.lambda = 0.1
model.s_bar = 10
model.alpha = 3
revenue.kind = quadratic
revenue.a = 0.00004
revenue.b = 1
cost.kind = linquad
cost.beta0 = 0.5
cost.beta1 = 0.5
cost.q0 = 5
cost.w = 0.25
grid.n_nodes = 401
)";

} // namespace

TEST_CASE("reference configuration parses into the expected model") {
    RunConfig cfg = parse_config(kReference, "");
    CHECK(cfg.params.mu == 0.2);
    CHECK(cfg.params.lambda == 0.1);
    CHECK(cfg.params.s_bar == 10.0);
    CHECK(cfg.params.productivity.constant_value() == 3.0);
    CHECK(cfg.revenue.kind == RevenueKind::Quadratic);
    CHECK(cfg.revenue.a == 0.00004);
    CHECK(cfg.revenue.b == 1.0);
    CHECK(cfg.cost.kind == CostKind::LinQuad);
    CHECK(cfg.cost.beta0 == 0.5);
    CHECK(cfg.cost.q0 == 5.0);
    REQUIRE(cfg.cost.q1_decay_rate.has_value());
    CHECK(*cfg.cost.q1_decay_rate == 0.25);
    CHECK(cfg.grid.n_nodes == 401);
    CHECK(cfg.grid.s_bar == 10.0);
    CHECK(cfg.root_tol == 1e-12);
    CHECK(cfg.fixed_point_tol == 1e-10);
    CHECK(cfg.max_fixed_point_iter == 200);
    CHECK(cfg.verify_compare_printed_forms);
    CHECK_FALSE(cfg.provenance.empty());
}

TEST_CASE("omitted keys take their defaults") {
    RunConfig cfg = parse_config("model.mu = 0.2\n"
                                 "model.lambda = 0.1\n"
                                 "model.s_bar = 10\n"
                                 "model.alpha = 3\n"
                                 "revenue.kind = log\n"
                                 "cost.kind = linquad\n"
                                 "cost.beta0 = 0.5\n",
                                 "");
    CHECK(cfg.grid.n_nodes == 2001);
    CHECK(cfg.cost.q0 == 0.0);
    CHECK(cfg.cost.beta1.constant_value() == 0.5); // follows beta0
    CHECK(cfg.cost.q1_at(3.0) == 0.0);
    CHECK(cfg.verify_compare_printed_forms);
}

TEST_CASE("every problem is reported in one aggregated error") {
    std::string text = "model.mu = -1\n"
                       "model.mu = 0.2\n"   // duplicate
                       "model.lambda = abc\n"
                       "model.s_bar = 10\n"
                       "model.alpha = 3\n"
                       "revenue.kind = log\n"
                       "revenue.b = 1\n"    // log revenue has no b
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0\n"
                       "future.setting = 1\n"
                       "not a key value line\n";
    try {
        parse_config(text, "");
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("duplicate key: model.mu") != std::string::npos);
        CHECK(msg.find("model.lambda: not a number") != std::string::npos);
        CHECK(msg.find("revenue.b: not a parameter of log revenue") !=
              std::string::npos);
        CHECK(msg.find("cost.beta0 must be positive") != std::string::npos);
        CHECK(msg.find("unknown key: future.setting") != std::string::npos);
        CHECK(msg.find("expected key = value") != std::string::npos);
        CHECK(msg.find("model.mu must be positive") != std::string::npos);
    }
}

TEST_CASE("missing required keys are each named") {
    try {
        parse_config("cost.beta0 = 0.5\n", "");
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("missing required key: model.mu") != std::string::npos);
        CHECK(msg.find("missing required key: model.lambda") !=
              std::string::npos);
        CHECK(msg.find("missing required key: model.s_bar") !=
              std::string::npos);
        CHECK(msg.find("model.alpha or model.alpha_path") != std::string::npos);
        CHECK(msg.find("missing required key: revenue.kind") !=
              std::string::npos);
        CHECK(msg.find("missing required key: cost.kind") != std::string::npos);
    }
}

TEST_CASE("competing specifications of one quantity are rejected") {
    std::string text = "model.mu = 0.2\n"
                       "model.lambda = 0.1\n"
                       "model.s_bar = 10\n"
                       "model.alpha = 3\n"
                       "revenue.kind = log\n"
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0.5\n"
                       "cost.q1 = 1\n"
                       "cost.w = 0.25\n";
    CHECK_THROWS_WITH_AS(parse_config(text, ""),
                         doctest::Contains("mutually exclusive"), ConfigError);
}

TEST_CASE("discount below negative depreciation is rejected") {
    std::string text = "model.mu = 0.2\n"
                       "model.lambda = -0.4\n"
                       "model.s_bar = 10\n"
                       "model.alpha = 3\n"
                       "revenue.kind = log\n"
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0.5\n";
    CHECK_THROWS_WITH_AS(parse_config(text, ""),
                         doctest::Contains("mu + model.lambda"), ConfigError);
}

TEST_CASE("kind-specific keys are enforced") {
    std::string base = "model.mu = 0.2\n"
                       "model.lambda = 0.1\n"
                       "model.s_bar = 10\n"
                       "model.alpha = 3\n";
    // constrained costs need both bounds
    CHECK_THROWS_WITH_AS(
        parse_config(base + "revenue.kind = log\n"
                            "cost.kind = constrained_linquad\n"
                            "cost.beta0 = 0.5\n"
                            "cost.M0 = 2\n",
                     ""),
        doctest::Contains("missing required key: cost.M1"), ConfigError);
    // power cost exponent must exceed 2
    CHECK_THROWS_WITH_AS(parse_config(base + "revenue.kind = log\n"
                                             "cost.kind = linpower\n"
                                             "cost.beta0 = 0.5\n"
                                             "cost.p = 1.5\n",
                                      ""),
                         doctest::Contains("cost.p must exceed 2"),
                         ConfigError);
    // theta belongs to linpower, not linquad
    CHECK_THROWS_WITH_AS(parse_config(base + "revenue.kind = log\n"
                                             "cost.kind = linquad\n"
                                             "cost.beta0 = 0.5\n"
                                             "cost.theta = 0.1\n",
                                      ""),
                         doctest::Contains("cost.theta"), ConfigError);
    // malformed boolean
    CHECK_THROWS_WITH_AS(parse_config(base + "revenue.kind = log\n"
                                             "cost.kind = linquad\n"
                                             "cost.beta0 = 0.5\n"
                                             "verify.compare_printed_forms = yes\n",
                                      ""),
                         doctest::Contains("expected true or false"),
                         ConfigError);
    // degenerate grid
    CHECK_THROWS_WITH_AS(parse_config(base + "revenue.kind = log\n"
                                             "cost.kind = linquad\n"
                                             "cost.beta0 = 0.5\n"
                                             "grid.n_nodes = 1\n",
                                      ""),
                         doctest::Contains("grid.n_nodes must be at least 2"),
                         ConfigError);
}

TEST_CASE("tabulated productivity loads from a table file") {
    std::string table = write_file("alpha_table.csv", "age,alpha\n"
                                                      "0, 3.0\n"
                                                      "5, 4.0\n"
                                                      "10, 3.5\n");
    std::string text = "model.mu = 0.2\n"
                       "model.lambda = 0.1\n"
                       "model.s_bar = 10\n"
                       "model.alpha_path = " + table + "\n"
                       "revenue.kind = log\n"
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0.5\n";
    RunConfig cfg = parse_config(text, "");
    CHECK_FALSE(cfg.params.productivity.is_constant());
    CHECK(cfg.params.productivity(5.0) == doctest::Approx(4.0));
    CHECK(cfg.params.productivity(7.5) == doctest::Approx(3.75));
}

TEST_CASE("productivity tables must cover the age range") {
    std::string table = write_file("alpha_short.csv", "0, 3.0\n5, 4.0\n");
    std::string text = "model.mu = 0.2\n"
                       "model.lambda = 0.1\n"
                       "model.s_bar = 10\n"
                       "model.alpha_path = " + table + "\n"
                       "revenue.kind = log\n"
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0.5\n";
    CHECK_THROWS_WITH_AS(parse_config(text, ""),
                         doctest::Contains("does not cover"), ConfigError);
}

TEST_CASE("relative table paths resolve against the config directory") {
    write_file("alpha_rel.csv", "0, 3.0\n10, 3.0\n");
    std::string text = "model.mu = 0.2\n"
                       "model.lambda = 0.1\n"
                       "model.s_bar = 10\n"
                       "model.alpha_path = alpha_rel.csv\n"
                       "revenue.kind = log\n"
                       "cost.kind = linquad\n"
                       "cost.beta0 = 0.5\n";
    RunConfig cfg = parse_config(text, scratch_dir().string());
    CHECK(cfg.params.productivity(10.0) == doctest::Approx(3.0));
}

TEST_CASE("table reader accepts separators, comments and a header") {
    std::string p = write_file("mixed_table.csv", "age\tvalue\n"
                                                  "0;1.5 # knot\n"
                                                  "\n"
                                                  "2.5,2.5\n"
                                                  "5 3.5\n");
    auto rows = read_table(p);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::pair<double, double>{0.0, 1.5});
    CHECK(rows[1] == std::pair<double, double>{2.5, 2.5});
    CHECK(rows[2] == std::pair<double, double>{5.0, 3.5});
}

TEST_CASE("table reader rejects malformed input") {
    CHECK_THROWS_AS(read_table(write_file("one_row.csv", "0, 1\n")),
                    InputError);
    CHECK_THROWS_AS(read_table(write_file("mid_garbage.csv",
                                          "0, 1\n1, x\n2, 3\n")),
                    InputError);
    CHECK_THROWS_AS(read_table(write_file("three_cols.csv",
                                          "0, 1, 2\n1, 2, 3\n")),
                    InputError);
    CHECK_THROWS_AS(read_table((scratch_dir() / "missing.csv").string()),
                    InputError);
}

TEST_CASE("grid profiles must sample the grid nodes exactly") {
    AgeGrid g(1.0, 3);
    std::string good = write_file("prof_good.csv", "0, 1\n0.5, 2\n1, 3\n");
    AgeProfile v = read_grid_profile(good, g);
    CHECK(v == AgeProfile{1.0, 2.0, 3.0});

    std::string short_file = write_file("prof_short.csv", "0, 1\n1, 3\n");
    CHECK_THROWS_AS(read_grid_profile(short_file, g), InputError);

    std::string off = write_file("prof_off.csv", "0, 1\n0.4, 2\n1, 3\n");
    CHECK_THROWS_AS(read_grid_profile(off, g), InputError);

    std::string nanv = write_file("prof_nan.csv", "0, 1\n0.5, nan\n1, 3\n");
    CHECK_THROWS_AS(read_grid_profile(nanv, g), InputError);
}

TEST_CASE("loading a missing config file is a configuration error") {
    CHECK_THROWS_AS(load_config((scratch_dir() / "no_such.cfg").string()),
                    ConfigError);
}
