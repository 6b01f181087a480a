#include "mnash/config.hpp"

#include "mnash/errors.hpp"

#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mnash {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> allowed(known.begin(), known.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

double number(const json& v, const std::string& where) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + " must be finite");
    return x;
}

std::size_t count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(where + " must be a non-negative integer");
    return v.get<std::size_t>();
}

Coords numbers(const json& v, const std::string& where) {
    if (v.is_array()) {
        Coords out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }
    return {number(v, where)};
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a string");
    return v.get<std::string>();
}

std::shared_ptr<const Manifold> make_manifold(const ManifoldSpec& spec) {
    auto order = [&](const char* name) {
        auto it = spec.params.find(name);
        if (it == spec.params.end() || !(it->second >= 1.0) || it->second != std::floor(it->second))
            throw ConfigError("manifold '" + spec.type + "' needs a positive integer '" + name + "'");
        return static_cast<std::size_t>(it->second);
    };
    if (spec.type == "euclidean") return EuclideanSpace::vectors(order("dim"));
    if (spec.type == "symmetric") return EuclideanSpace::symmetric_matrices(order("n"));
    if (spec.type == "halfplane") return PoincareHalfPlane::make();
    if (spec.type == "spd") return SPDManifold::make(order("n"));
    throw ConfigError("unknown manifold type '" + spec.type + "'");
}

const Coords& param(const SetSpec& spec, const char* name) {
    auto it = spec.params.find(name);
    if (it == spec.params.end()) throw ConfigError("set '" + spec.kind + "' needs parameter '" + name + "'");
    return it->second;
}

double scalar_param(const SetSpec& spec, const char* name, std::optional<double> fallback = std::nullopt) {
    if (!spec.params.count(name)) {
        if (fallback) return *fallback;
        param(spec, name);
    }
    const Coords& v = param(spec, name);
    if (v.size() != 1) throw ConfigError("set parameter '" + std::string(name) + "' must be a single number");
    return v[0];
}

}  // namespace

ProblemConfig parse_config(const std::string& content) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(doc, "config", {"schema_version", "payoffs", "manifolds", "sets", "solver", "probe", "outputs"});

    ProblemConfig cfg;
    if (!doc.contains("schema_version")) throw ConfigError("config needs schema_version");
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kConfigSchemaVersion)
        throw ConfigError("unsupported schema_version; expected " + std::to_string(kConfigSchemaVersion));

    if (!doc.contains("payoffs")) throw ConfigError("config needs a payoffs section");
    const json& payoffs = doc["payoffs"];
    if (!payoffs.is_object()) throw ConfigError("payoffs must be an object");
    for (auto it = payoffs.begin(); it != payoffs.end(); ++it) {
        if (it.key() == "example")
            cfg.example = text(it.value(), "payoffs.example");
        else if (it.key() == "variant")
            cfg.variant = text(it.value(), "payoffs.variant");
        else
            cfg.params[it.key()] = number(it.value(), "payoffs." + it.key());
    }
    if (cfg.example.empty()) throw ConfigError("payoffs.example is required");

    if (doc.contains("manifolds")) {
        if (!doc["manifolds"].is_array()) throw ConfigError("manifolds must be a list");
        for (const auto& m : doc["manifolds"]) {
            if (!m.is_object() || !m.contains("type")) throw ConfigError("manifold entries need a type");
            ManifoldSpec spec;
            for (auto it = m.begin(); it != m.end(); ++it) {
                if (it.key() == "type")
                    spec.type = text(it.value(), "manifolds[].type");
                else
                    spec.params[it.key()] = number(it.value(), "manifolds[]." + it.key());
            }
            cfg.manifolds.push_back(std::move(spec));
        }
    }

    if (doc.contains("sets")) {
        if (!doc["sets"].is_array()) throw ConfigError("sets must be a list");
        for (const auto& s : doc["sets"]) {
            if (!s.is_object() || !s.contains("kind") || !s.contains("player"))
                throw ConfigError("set entries need player and kind");
            SetSpec spec;
            for (auto it = s.begin(); it != s.end(); ++it) {
                if (it.key() == "kind")
                    spec.kind = text(it.value(), "sets[].kind");
                else if (it.key() == "player")
                    spec.player = count(it.value(), "sets[].player");
                else
                    spec.params[it.key()] = numbers(it.value(), "sets[]." + it.key());
            }
            cfg.sets.push_back(std::move(spec));
        }
    }

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        check_keys(s, "solver",
                   {"alpha", "rho", "tol", "max_iter", "t_end", "h", "record_every", "seed", "vi_samples", "start"});
        auto& o = cfg.solver;
        if (s.contains("alpha")) o.alpha = number(s["alpha"], "solver.alpha");
        if (s.contains("rho")) o.rho = number(s["rho"], "solver.rho");
        if (s.contains("tol")) o.tol = number(s["tol"], "solver.tol");
        if (s.contains("max_iter")) o.max_iter = count(s["max_iter"], "solver.max_iter");
        if (s.contains("t_end")) o.t_end = number(s["t_end"], "solver.t_end");
        if (s.contains("h")) o.h = number(s["h"], "solver.h");
        if (s.contains("record_every")) o.record_every = count(s["record_every"], "solver.record_every");
        if (s.contains("seed")) o.seed = count(s["seed"], "solver.seed");
        if (s.contains("vi_samples")) o.vi_samples = count(s["vi_samples"], "solver.vi_samples");
        if (s.contains("start")) o.start = numbers(s["start"], "solver.start");
    }

    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        check_keys(p, "probe", {"alpha", "rho", "pairs", "radii", "samples_per_radius", "origin"});
        if (p.contains("alpha")) cfg.probe.alpha = number(p["alpha"], "probe.alpha");
        if (p.contains("rho")) cfg.probe.rho = number(p["rho"], "probe.rho");
        if (p.contains("pairs")) cfg.probe.pairs = count(p["pairs"], "probe.pairs");
        if (p.contains("radii")) cfg.probe.radii = numbers(p["radii"], "probe.radii");
        if (p.contains("samples_per_radius"))
            cfg.probe.samples_per_radius = count(p["samples_per_radius"], "probe.samples_per_radius");
        if (p.contains("origin")) cfg.probe.origin = numbers(p["origin"], "probe.origin");
    }

    if (doc.contains("outputs")) {
        const json& o = doc["outputs"];
        check_keys(o, "outputs", {"trace_csv", "summary_json", "report_json"});
        if (o.contains("trace_csv")) cfg.outputs.trace_csv = text(o["trace_csv"], "outputs.trace_csv");
        if (o.contains("summary_json")) cfg.outputs.summary_json = text(o["summary_json"], "outputs.summary_json");
        if (o.contains("report_json")) cfg.outputs.report_json = text(o["report_json"], "outputs.report_json");
    }
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_environment(ProblemConfig& config) {
    const char* raw = std::getenv(kSeedEnvVar);
    if (!raw || !*raw) return;
    errno = 0;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(raw, &end, 10);
    if (errno != 0 || *end != '\0' || raw[0] == '-')
        throw ConfigError(std::string(kSeedEnvVar) + " must be a non-negative integer");
    config.solver.seed = seed;
}

SetPtr build_set(const SetSpec& spec, std::shared_ptr<const Manifold> manifold) {
    try {
        const std::string& k = spec.kind;
        if (k == "Interval")
            return std::make_shared<const BoxSet>(manifold, Coords{scalar_param(spec, "lower")},
                                                  Coords{scalar_param(spec, "upper")});
        if (k == "HalfLine")
            return std::make_shared<const BoxSet>(manifold, Coords{scalar_param(spec, "lower")},
                                                  Coords{std::numeric_limits<double>::infinity()});
        if (k == "Box") return std::make_shared<const BoxSet>(manifold, param(spec, "lower"), param(spec, "upper"));
        if (k == "GeodesicBall")
            return std::make_shared<const GeodesicBall>(manifold, manifold->point(param(spec, "center")),
                                                        scalar_param(spec, "radius"));
        if (k == "TraceHalfSpace") {
            auto sym = std::dynamic_pointer_cast<const EuclideanSpace>(manifold);
            if (!sym) throw ConfigError("TraceHalfSpace needs a symmetric-matrix factor");
            return std::make_shared<const TraceHalfSpace>(sym, scalar_param(spec, "lower_trace", 1.0));
        }
        if (k == "DetBandBall")
            return std::make_shared<const DetBandBall>(manifold, scalar_param(spec, "radius", 1.0),
                                                       scalar_param(spec, "det_lo", 1.0),
                                                       scalar_param(spec, "det_hi", 2.0));
        if (k == "TraceInvSublevel") {
            auto spd = std::dynamic_pointer_cast<const SPDManifold>(manifold);
            if (!spd) throw ConfigError("TraceInvSublevel needs an SPD factor");
            return std::make_shared<const TraceInvSublevel>(spd, scalar_param(spec, "bound"));
        }
        if (k == "HalfPlaneAnnulus") {
            auto plane = std::dynamic_pointer_cast<const PoincareHalfPlane>(manifold);
            if (!plane) throw ConfigError("HalfPlaneAnnulus needs a half-plane factor");
            return std::make_shared<const HalfPlaneAnnulus>(plane);
        }
        throw ConfigError("unknown set kind '" + k + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("set '" + spec.kind + "': " + e.what());
    }
}

RegisteredGame build_problem(const ProblemConfig& config) {
    RegisteredGame rg;
    try {
        rg = build_registered_game(config.example, config.variant, config.params);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("payoff parameters rejected: " + std::string(e.what()));
    }
    if (!config.manifolds.empty()) {
        if (config.manifolds.size() != rg.game->player_count())
            throw ConfigError("config lists " + std::to_string(config.manifolds.size()) + " manifolds, the game has " +
                              std::to_string(rg.game->player_count()) + " players");
        for (std::size_t i = 0; i < config.manifolds.size(); ++i) {
            const auto m = make_manifold(config.manifolds[i]);
            if (m->id() != rg.game->factor(i).id())
                throw ConfigError("manifold " + std::to_string(i) + " is " + m->id() + " but example " + config.example +
                                  " uses " + rg.game->factor(i).id());
        }
    }
    for (const auto& spec : config.sets) {
        if (spec.player >= rg.game->player_count())
            throw ConfigError("set override names player " + std::to_string(spec.player));
        rg = with_strategy_set(rg, spec.player, build_set(spec, rg.game->strategy_set(spec.player).manifold_ptr()));
    }
    return rg;
}

SolverConfig resolve_solver(const RegisteredGame& rg, const ProblemConfig& config) {
    SolverConfig out = rg.solver;
    const auto& o = config.solver;
    if (o.alpha) out.alpha = *o.alpha;
    if (o.rho) out.rho = *o.rho;
    if (o.tol) out.tol = *o.tol;
    if (o.max_iter) out.max_iter = *o.max_iter;
    if (o.t_end) out.t_end = *o.t_end;
    if (o.h) out.h = *o.h;
    if (o.record_every) out.record_every = *o.record_every;
    if (o.seed) out.seed = *o.seed;
    if (o.vi_samples) out.vi_samples = *o.vi_samples;
    try {
        out.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return out;
}

ManifoldPoint resolve_start(const RegisteredGame& rg, const ProblemConfig& config) {
    if (!config.solver.start) return rg.game->set().anchor();
    try {
        return rg.game->manifold().point(*config.solver.start);
    } catch (const Error& e) {
        throw ConfigError(std::string("solver.start: ") + e.what());
    }
}

}  // namespace mnash
