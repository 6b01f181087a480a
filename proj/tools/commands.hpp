#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace mnash::cli {

enum ExitCode : int {
    kOk = 0,
    kFailed = 1,
    kConfigError = 2,
    kNumericError = 3,
    kInconclusive = 4,
};

/// Verifies the claimed solution memberships of a registered example; writes summary.json and,
/// when a solver runs, trace CSVs into out_dir.
int run_example(const std::string& id, const std::string& variant, const std::string& out_dir, std::ostream& log);

int run_solve(const std::string& config_path, const std::string& method, const std::string& out_dir,
              std::ostream& log);

int run_probe(const std::string& config_path, const std::string& kind, std::optional<double> alpha,
              std::optional<double> rho, std::ostream& out, std::ostream& log);

int run_battery(const std::string& key, const std::string& out_path, std::ostream& out, std::ostream& log);

}  // namespace mnash::cli
