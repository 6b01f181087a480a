#include "commands.hpp"

#include "mnash/config.hpp"
#include "mnash/errors.hpp"
#include "mnash/registry.hpp"
#include "mnash/report_io.hpp"
#include "mnash/verification.hpp"

#include "json.hpp"

#include <filesystem>
#include <iostream>

namespace mnash::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir.empty() ? "." : dir) / name).string();
}

json parsed(const std::string& doc) { return json::parse(doc); }

std::string claimed_set(const RegisteredGame& rg) {
    if (rg.key == "6.1") return "NE = K1 x {0}; NS additionally contains ((0,2), +-1)";
    if (rg.key == "6.2") {
        if (rg.variant == "d1") return "NE = NS = {1} x K2";
        if (rg.variant == "d2") return "NE = NS = {1} x {X in K2 : det X = 1}";
        return "(1, I) in NE = NS";
    }
    if (rg.key == "6.3") return rg.variant == "a" ? "(sqrt(n/3), I) in NE and NS" : "(t, j(t) I) in NE and NS";
    if (rg.key == "6.4") return "unique equilibrium, reached by both dynamics at the contraction rate";
    if (rg.key == "decay") return "no equilibrium";
    return "every profile is an equilibrium";
}

bool crosscheck_ok(const CrosscheckReport& r) { return r.pattern_ok && r.expectation_ok; }

int example_6_4(const RegisteredGame& rg, json& summary, const std::string& out_dir, std::ostream& log) {
    const Game& game = *rg.game;
    const MonotoneConstants& k = *rg.constants;
    summary["constants"] = parsed(to_json(k));

    const HypothesisReport contraction = contraction_probe(game, k.alpha, k.rho, 1000, rg.solver.seed);
    summary["contraction"] = parsed(to_json(contraction));

    const ManifoldPoint start = game.set().anchor();
    const SolverReport dds = solve_dds(game, rg.solver, start, rg.reference);
    const SolverReport cds = solve_cds(game, rg.solver, start, rg.reference);
    write_text_file(join(out_dir, "dds_trace.csv"), trace_csv(dds.trace));
    write_text_file(join(out_dir, "cds_trace.csv"), trace_csv(cds.trace));
    summary["dds"] = parsed(to_json(dds));
    summary["cds"] = parsed(to_json(cds));

    const double dds_gap = game.manifold().distance(dds.final_point, *rg.reference);
    const double cds_gap = game.manifold().distance(cds.final_point, dds.final_point);
    summary["dds_distance_to_reference"] = dds_gap;
    summary["cds_distance_to_dds"] = cds_gap;

    const bool ok = contraction.verdict == Verdict::SupportsHypothesis && dds.status == SolverStatus::Converged &&
                    dds.bound_fraction() == 1.0 && cds.bound_fraction() == 1.0 && dds_gap <= 1e-6 &&
                    cds_gap <= 1e-6 && dds.certificate_pass;
    log << "contraction: " << to_string(contraction.verdict) << ", dds: " << to_string(dds.status)
        << " (distance to reference " << dds_gap << "), cds gap " << cds_gap << "\n";
    return ok ? kOk : kFailed;
}

}  // namespace

int run_example(const std::string& id, const std::string& variant, const std::string& out_dir, std::ostream& log) {
    RegisteredGame rg;
    try {
        rg = build_registered_game(id, variant);
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    }
    json summary{{"example", rg.key}, {"variant", rg.variant}, {"game", rg.game->name()}, {"claimed", claimed_set(rg)}};
    if (rg.reference) summary["reference"] = parsed(to_json(*rg.reference));

    bool verified = true;
    try {
        if (rg.key == "6.4") {
            verified = example_6_4(rg, summary, out_dir, log) == kOk;
        }
        CheckOptions opt;
        const CrosscheckReport cross = equilibrium_set_crosscheck(*rg.game, curated_candidates(rg), rg.full_equality, opt);
        summary["crosscheck"] = parsed(to_json(cross));
        verified = verified && crosscheck_ok(cross);
        log << "crosscheck over " << cross.candidates.size() << " candidates: pattern "
            << (cross.pattern_ok ? "ok" : "broken") << ", expectations " << (cross.expectation_ok ? "met" : "missed")
            << "\n";

        if (rg.key == "6.2" && rg.reference) {
            const EquilibriumCheck ns = is_nash_stampacchia(*rg.game, *rg.reference, opt);
            const auto hull = rg.game->subdiff(0, *rg.reference);
            json ends = json::array();
            for (const auto& g : hull.generators()) ends.push_back(g.components[0]);
            summary["player1_hull"] = ends;
            summary["player1_certificate"] = ns.players.at(0).certificate;
        }
        if (rg.key == "6.3") {
            if (rg.variant == "b") {
                summary["root_t"] = rg.reference->coords[0];
                summary["root_j"] = rg.reference->coords[1];
            }
            if (rg.variant == "a") {
                CoercivityOptions copt;
                const HypothesisReport coercive = coercivity_probe(*rg.game, rg.probe_origin, copt);
                summary["coercivity"] = parsed(to_json(coercive));
                verified = verified && coercive.verdict == Verdict::SupportsHypothesis;
                log << "coercivity: " << to_string(coercive.verdict) << "\n";
            }
        }
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        summary["error"] = e.what();
        verified = false;
    }
    summary["verified"] = verified;
    write_text_file(join(out_dir, "summary.json"), summary.dump(2) + "\n");
    log << "example " << rg.key << (rg.variant.empty() ? "" : " (" + rg.variant + ")")
        << (verified ? ": verified" : ": NOT verified") << "\n";
    return verified ? kOk : kFailed;
}

int run_solve(const std::string& config_path, const std::string& method, const std::string& out_dir,
              std::ostream& log) {
    ProblemConfig cfg;
    RegisteredGame rg;
    SolverConfig solver;
    ManifoldPoint start;
    try {
        if (method != "dds" && method != "cds") throw ConfigError("method must be dds or cds");
        cfg = load_config(config_path);
        apply_environment(cfg);
        rg = build_problem(cfg);
        solver = resolve_solver(rg, cfg);
        start = resolve_start(rg, cfg);
    } catch (const Error& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    SolverReport report;
    try {
        report = method == "dds" ? solve_dds(*rg.game, solver, start, rg.reference)
                                 : solve_cds(*rg.game, solver, start, rg.reference);
    } catch (const NumericError& e) {
        log << "numeric error: " << e.what() << "\n";
        return kNumericError;
    }
    const std::string csv_path = cfg.outputs.trace_csv.empty() ? join(out_dir, "trace.csv") : cfg.outputs.trace_csv;
    const std::string json_path =
        cfg.outputs.summary_json.empty() ? join(out_dir, "summary.json") : cfg.outputs.summary_json;
    write_text_file(csv_path, trace_csv(report.trace));
    write_text_file(json_path, to_json(report));
    log << method << ": " << to_string(report.status) << " after " << report.steps
        << " steps, residual " << report.final_residual << ", bound held " << report.bound_held << "/"
        << report.bound_checked << "\n";
    if (report.status == SolverStatus::NumericError) return kNumericError;
    return report.status == SolverStatus::Converged ? kOk : kFailed;
}

int run_probe(const std::string& config_path, const std::string& kind, std::optional<double> alpha,
              std::optional<double> rho, std::ostream& out, std::ostream& log) {
    ProblemConfig cfg;
    RegisteredGame rg;
    HypothesisReport report;
    try {
        if (kind != "contraction" && kind != "coercivity") throw ConfigError("kind must be contraction or coercivity");
        cfg = load_config(config_path);
        apply_environment(cfg);
        rg = build_problem(cfg);
        const SolverConfig solver = resolve_solver(rg, cfg);
        if (kind == "contraction") {
            const double a = alpha ? *alpha : cfg.probe.alpha ? *cfg.probe.alpha : solver.alpha;
            const std::optional<double> r = rho ? rho : cfg.probe.rho ? cfg.probe.rho : solver.rho;
            if (!r) throw ConfigError("contraction probe needs rho (flag, probe.rho or solver.rho)");
            if (!(a > 0.0) || !(*r > 0.0 && *r < 1.0)) throw ConfigError("probe needs alpha > 0 and rho in (0, 1)");
            report = contraction_probe(*rg.game, a, *r, cfg.probe.pairs, solver.seed);
        } else {
            CoercivityOptions opt;
            opt.radii = cfg.probe.radii;
            opt.samples_per_radius = cfg.probe.samples_per_radius;
            opt.seed = solver.seed;
            ManifoldPoint origin = rg.probe_origin;
            if (cfg.probe.origin) origin = rg.game->manifold().point(*cfg.probe.origin);
            if (!rg.game->set().contains(origin)) throw ConfigError("probe origin is outside the strategy set");
            report = coercivity_probe(*rg.game, origin, opt);
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericError& e) {
        log << "numeric error: " << e.what() << "\n";
        return kNumericError;
    } catch (const Error& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    const std::string doc = to_json(report);
    if (cfg.outputs.report_json.empty())
        out << doc;
    else
        write_text_file(cfg.outputs.report_json, doc);
    log << kind << ": " << to_string(report.verdict) << "\n";
    switch (report.verdict) {
        case Verdict::SupportsHypothesis: return kOk;
        case Verdict::Violated: return kFailed;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

int run_battery(const std::string& key, const std::string& out_path, std::ostream& out, std::ostream& log) {
    BatteryReport report;
    try {
        report = hadamard_battery(key);
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    }
    const std::string doc = to_json(report);
    if (out_path.empty())
        out << doc;
    else
        write_text_file(out_path, doc);
    log << "battery " << key << ": " << (report.pattern_ok ? "expected pattern" : "UNEXPECTED pattern") << "\n";
    return report.pattern_ok ? kOk : kFailed;
}

}  // namespace mnash::cli
