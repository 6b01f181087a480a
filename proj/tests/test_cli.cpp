#include "doctest.h"

#include "commands.hpp"
#include "mnash/config.hpp"
#include "mnash/errors.hpp"
#include "mnash/report_io.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace mnash;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kConfigs = std::string(MNASH_SOURCE_DIR) + "/configs/";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mnash-tests-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("valid documents parse") {
        const auto cfg = load_config(kConfigs + "trace_halfspace.json");
        CHECK(cfg.example == "6.4");
        CHECK(cfg.params.at("c") == 0.1);
        CHECK(cfg.manifolds.size() == 2);
        CHECK(cfg.sets.size() == 2);
        CHECK(cfg.solver.seed == 7u);
        REQUIRE(cfg.solver.start);
        CHECK(cfg.solver.start->size() == 5);
        const auto rg = build_problem(cfg);
        const auto solver = resolve_solver(rg, cfg);
        CHECK(solver.tol == 1e-12);
        REQUIRE(solver.rho);
        CHECK(rg.game->set().contains(rg.game->set().project(resolve_start(rg, cfg))));
    }

    TEST_CASE("malformed documents are configuration errors") {
        const char* bad[] = {
            "{",
            R"({"payoffs": {"example": "6.4"}})",
            R"({"schema_version": 2, "payoffs": {"example": "6.4"}})",
            R"({"schema_version": 1, "payoffs": {"example": "6.4"}, "colour": 1})",
            R"({"schema_version": 1, "payoffs": {"example": "9.9"}})",
            R"({"schema_version": 1, "payoffs": {"example": "6.4"}, "solver": {"alpha": "big"}})",
            R"({"schema_version": 1, "payoffs": {"example": "6.4"}, "solver": {"max_iter": -3}})",
            R"({"schema_version": 1, "payoffs": {"example": "6.4"}, "sets": [{"player": 0, "kind": "Moebius"}]})",
        };
        for (const char* text : bad) {
            CAPTURE(text);
            CHECK_THROWS_AS(build_problem(parse_config(text)), ConfigError);
        }
        CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
    }

    TEST_CASE("validation before solving") {
        CHECK_THROWS_AS(build_problem(load_config(kConfigs + "empty_interval.json")), ConfigError);
        CHECK_THROWS_AS(
            build_problem(parse_config(R"({"schema_version": 1, "payoffs": {"example": "6.2", "g": 1, "h": 1}})")),
            ConfigError);
        CHECK_THROWS_AS(build_problem(parse_config(
                            R"({"schema_version": 1, "payoffs": {"example": "6.4"}, "manifolds": [{"type": "spd", "n": 2}]})")),
                        ConfigError);
        CHECK_NOTHROW(build_problem(parse_config(R"({"schema_version": 1, "payoffs": {"example": "6.2", "variant": "d2"}})")));
    }

    TEST_CASE("seed override from the environment") {
        auto cfg = load_config(kConfigs + "trace_halfspace.json");
        ::setenv(kSeedEnvVar, "12345", 1);
        apply_environment(cfg);
        CHECK(cfg.solver.seed == 12345u);
        ::setenv(kSeedEnvVar, "12x", 1);
        CHECK_THROWS_AS(apply_environment(cfg), ConfigError);
        ::setenv(kSeedEnvVar, "-4", 1);
        CHECK_THROWS_AS(apply_environment(cfg), ConfigError);
        ::unsetenv(kSeedEnvVar);
        auto untouched = load_config(kConfigs + "trace_halfspace.json");
        apply_environment(untouched);
        CHECK(untouched.solver.seed == 7u);
    }
}

TEST_SUITE("report-io") {
    TEST_CASE("trace CSV layout") {
        std::vector<TraceRow> rows(2);
        rows[0] = {0.0, 0.1, 0.5, std::nullopt, true};
        rows[1] = {1.0, 1.0 / 3.0, std::nullopt, 2.5, false};
        const std::string csv = trace_csv(rows);
        CHECK(csv.rfind(std::string(kTraceCsvHeader) + "\r\n", 0) == 0);
        CHECK(csv.find("0,0.10000000000000001,0.5,,1\r\n") != std::string::npos);
        CHECK(csv.find("1,0.33333333333333331,,2.5,0\r\n") != std::string::npos);
        CHECK(std::stod("0.33333333333333331") == 1.0 / 3.0);
        CHECK(trace_csv({}) == std::string(kTraceCsvHeader) + "\r\n");
    }

    TEST_CASE("JSON round-trips doubles and nulls non-finite values") {
        MonotoneConstants k{1.0 / 3.0, std::numeric_limits<double>::infinity(), std::nan(""), 0.1};
        const auto doc = json::parse(to_json(k));
        CHECK(doc["lipschitz"].get<double>() == 1.0 / 3.0);
        CHECK(doc["kappa"].is_null());
        CHECK(doc["alpha"].is_null());
        CHECK(to_json(k) == to_json(k));
        CHECK(to_json(k).back() == '\n');
    }
}

TEST_SUITE("cli") {
    TEST_CASE("solve writes identical artifacts on repeated runs") {
        std::ostringstream log;
        const auto a = scratch("solve-a"), b = scratch("solve-b");
        for (const std::string method : {"dds", "cds"}) {
            CAPTURE(method);
            CHECK(cli::run_solve(kConfigs + "trace_halfspace.json", method, a.string(), log) == cli::kOk);
            CHECK(cli::run_solve(kConfigs + "trace_halfspace.json", method, b.string(), log) == cli::kOk);
            CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
            CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
            const auto summary = json::parse(slurp(a / "summary.json"));
            CHECK(summary["status"] == "Converged");
            CHECK(summary["bound"]["fraction"].get<double>() == 1.0);
            CHECK(summary["final_point"]["coords"].size() == 5);
        }
        CHECK(cli::run_solve(kConfigs + "trace_halfspace.json", "newton", a.string(), log) == cli::kConfigError);
        CHECK(cli::run_solve(kConfigs + "empty_interval.json", "dds", a.string(), log) == cli::kConfigError);
    }

    TEST_CASE("solver outputs follow the configured paths") {
        const auto dir = scratch("paths");
        const std::string cfg = write_config(dir, R"({"schema_version": 1, "payoffs": {"example": "6.4"},
            "solver": {"max_iter": 3},
            "outputs": {"trace_csv": ")" + (dir / "deep/t.csv").string() + R"(", "summary_json": ")" +
                                                      (dir / "deep/s.json").string() + R"("}})");
        std::ostringstream log;
        CHECK(cli::run_solve(cfg, "dds", dir.string(), log) == cli::kFailed);
        CHECK(fs::exists(dir / "deep/t.csv"));
        CHECK(json::parse(slurp(dir / "deep/s.json"))["status"] == "MaxIterations");
    }

    TEST_CASE("probe exit codes") {
        std::ostringstream out, log;
        CHECK(cli::run_probe(kConfigs + "trace_halfspace.json", "contraction", std::nullopt, std::nullopt, out, log) ==
              cli::kOk);
        CHECK(cli::run_probe(kConfigs + "decay.json", "coercivity", std::nullopt, std::nullopt, out, log) ==
              cli::kFailed);
        CHECK(cli::run_probe(kConfigs + "zero.json", "contraction", std::nullopt, 0.5, out, log) == cli::kFailed);
        CHECK(cli::run_probe(kConfigs + "zero.json", "contraction", std::nullopt, 1.5, out, log) == cli::kConfigError);
        CHECK(cli::run_probe(kConfigs + "zero.json", "mystery", std::nullopt, std::nullopt, out, log) ==
              cli::kConfigError);
        std::ostringstream first, second;
        cli::run_probe(kConfigs + "decay.json", "coercivity", std::nullopt, std::nullopt, first, log);
        cli::run_probe(kConfigs + "decay.json", "coercivity", std::nullopt, std::nullopt, second, log);
        CHECK(first.str() == second.str());
        CHECK(json::parse(first.str())["verdict"] == "Violated");
    }

    TEST_CASE("example command") {
        const auto dir = scratch("example");
        std::ostringstream log;
        CHECK(cli::run_example("6.1", "", dir.string(), log) == cli::kOk);
        const auto summary = json::parse(slurp(dir / "summary.json"));
        CHECK(summary["verified"] == true);
        CHECK(summary["crosscheck"]["candidates"].size() >= 9);
        CHECK(cli::run_example("6.4", "", dir.string(), log) == cli::kOk);
        CHECK(fs::exists(dir / "dds_trace.csv"));
        CHECK(fs::exists(dir / "cds_trace.csv"));
        CHECK(cli::run_example("8.8", "", dir.string(), log) == cli::kConfigError);
        CHECK(cli::run_example("6.3", "z", dir.string(), log) == cli::kConfigError);
    }

    TEST_CASE("battery command") {
        std::ostringstream out, log;
        CHECK(cli::run_battery("euclidean", "", out, log) == cli::kOk);
        CHECK(json::parse(out.str())["pattern_ok"] == true);
        CHECK(cli::run_battery("nowhere", "", out, log) == cli::kConfigError);
    }
}
