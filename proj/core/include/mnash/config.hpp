#pragma once

#include "mnash/registry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mnash {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr const char* kSeedEnvVar = "MANIFOLD_NASH_SEED";

struct ManifoldSpec {
    /// euclidean, symmetric, halfplane or spd.
    std::string type;
    std::map<std::string, double> params;
};

/// Replacement strategy set for one player.
struct SetSpec {
    std::size_t player = 0;
    /// Interval, HalfLine, Box, GeodesicBall, TraceHalfSpace, DetBandBall, TraceInvSublevel, HalfPlaneAnnulus.
    std::string kind;
    std::map<std::string, Coords> params;
};

/// Solver fields present in the file; everything else falls back to the registry defaults.
struct SolverOverrides {
    std::optional<double> alpha;
    std::optional<double> rho;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<double> t_end;
    std::optional<double> h;
    std::optional<std::size_t> record_every;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> vi_samples;
    std::optional<Coords> start;
};

struct ProbeSettings {
    std::optional<double> alpha;
    std::optional<double> rho;
    std::size_t pairs = 1000;
    std::vector<double> radii{5.0, 10.0, 20.0, 40.0};
    std::size_t samples_per_radius = 200;
    std::optional<Coords> origin;
};

struct OutputPaths {
    std::string trace_csv;
    std::string summary_json;
    std::string report_json;
};

struct ProblemConfig {
    int schema_version = kConfigSchemaVersion;
    std::string example;
    std::string variant;
    ParamMap params;
    std::vector<ManifoldSpec> manifolds;
    std::vector<SetSpec> sets;
    SolverOverrides solver;
    ProbeSettings probe;
    OutputPaths outputs;
};

/// Parses and validates the document; every failure is a ConfigError.
ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);

/// Applies MANIFOLD_NASH_SEED when set; a malformed value is a ConfigError.
void apply_environment(ProblemConfig& config);

/// Registry game with manifold checks and set overrides applied. Parameter-constraint
/// violations surface as ConfigError.
RegisteredGame build_problem(const ProblemConfig& config);

/// Builds a set of the given kind on `manifold`.
SetPtr build_set(const SetSpec& spec, std::shared_ptr<const Manifold> manifold);

SolverConfig resolve_solver(const RegisteredGame& rg, const ProblemConfig& config);
/// Configured start or the anchor of K.
ManifoldPoint resolve_start(const RegisteredGame& rg, const ProblemConfig& config);

}  // namespace mnash
