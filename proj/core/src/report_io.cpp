#include "mnash/report_io.hpp"

#include "mnash/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace mnash {

namespace {

using nlohmann::json;

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json nums(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(num(x));
    return out;
}

json point(const ManifoldPoint& p) { return json{{"manifold", p.manifold_id}, {"coords", nums(p.coords)}}; }

json opt_point(const std::optional<ManifoldPoint>& p) { return p ? point(*p) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json player_json(const PlayerVerdict& v) {
    return json{{"pass", v.pass}, {"worst", num(v.worst)}, {"witness", opt_point(v.witness)},
                {"certificate", nums(v.certificate)}};
}

json check_json(const EquilibriumCheck& c) {
    json players = json::array();
    for (const auto& p : c.players) players.push_back(player_json(p));
    return json{{"pass", c.pass}, {"worst", num(c.worst)}, {"players", players}};
}

}  // namespace

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::string out = std::string(kTraceCsvHeader) + "\r\n";
    for (const auto& r : rows) {
        out += fmt(r.k_or_t) + "," + fmt(r.residual) + "," + (r.dist_to_ref ? fmt(*r.dist_to_ref) : "") + "," +
               (r.bound ? fmt(*r.bound) : "") + "," + (r.in_set ? "1" : "0") + "\r\n";
    }
    return out;
}

std::string to_json(const SolverReport& r) {
    json j{{"method", r.method},
           {"status", to_string(r.status)},
           {"message", r.message},
           {"steps", r.steps},
           {"trace_rows", r.trace.size()},
           {"final_point", point(r.final_point)},
           {"final_residual", num(r.final_residual)},
           {"start_in_set", r.start_in_set},
           {"viability", num(r.viability)},
           {"bound", {{"checked", r.bound_checked}, {"held", r.bound_held}, {"fraction", num(r.bound_fraction())}}},
           {"certificate",
            {{"checked", r.certificate_checked}, {"pass", r.certificate_pass}, {"worst", num(r.certificate_worst)}}}};
    return dump(j);
}

std::string to_json(const HypothesisReport& r) {
    json witness = nullptr;
    if (r.witness) {
        witness = json::array();
        for (const auto& p : *r.witness) witness.push_back(point(p));
    }
    json j{{"kind", to_string(r.kind)}, {"verdict", to_string(r.verdict)}, {"samples", r.samples},
           {"worst", num(r.worst)},     {"threshold", num(r.threshold)}, {"radii", nums(r.radii)},
           {"trend", nums(r.trend)},    {"witness", witness},            {"note", r.note}};
    return dump(j);
}

std::string to_json(const BatteryReport& r) {
    json sets = json::array();
    for (const auto& s : r.sets) {
        json convexity{{"pass", s.convexity.pass}, {"pairs", s.convexity.pairs}, {"witness", nullptr}};
        if (s.convexity.witness) {
            const auto& w = *s.convexity.witness;
            convexity["witness"] = json{{"from", point(w.from)}, {"to", point(w.to)},          {"s", num(w.s)},
                                        {"point", point(w.point)}, {"violation", num(w.violation)}};
        }
        sets.push_back(json{{"label", s.label},
                            {"kind", to_string(s.kind)},
                            {"expect_convex", s.expect_convex},
                            {"projection_applicable", s.projection_applicable},
                            {"obtuse", {{"pass", s.obtuse.pass}, {"worst", num(s.obtuse.worst)},
                                        {"directions", s.obtuse.directions}}},
                            {"nonexpansive", {{"pass", s.nonexpansive.pass}, {"max_ratio", num(s.nonexpansive.max_ratio)},
                                              {"pairs", s.nonexpansive.pairs}}},
                            {"convexity", convexity},
                            {"pattern_ok", s.pattern_ok}});
    }
    json j{{"key", r.key},
           {"manifold", r.manifold_id},
           {"sets", sets},
           {"curvature",
            {{"expectation", to_string(r.curvature.expectation)}, {"planes", r.curvature.planes},
             {"min", num(r.curvature.min)}, {"max", num(r.curvature.max)}, {"pass", r.curvature.pass}}},
           {"pattern_ok", r.pattern_ok}};
    return dump(j);
}

std::string to_json(const CrosscheckReport& r) {
    json cands = json::array();
    for (const auto& c : r.candidates) {
        cands.push_back(json{{"label", c.label},       {"point", point(c.point)},       {"ne", c.ne},
                             {"ns", c.ns},             {"nc", c.nc},                    {"ne_worst", num(c.ne_worst)},
                             {"ns_worst", num(c.ns_worst)}, {"nc_worst", num(c.nc_worst)}, {"pattern_ok", c.pattern_ok},
                             {"expectation_ok", c.expectation_ok}});
    }
    json j{{"game", r.game},
           {"full_equality", r.full_equality},
           {"candidates", cands},
           {"pattern_ok", r.pattern_ok},
           {"expectation_ok", r.expectation_ok}};
    return dump(j);
}

std::string to_json(const LeviCivitaReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back(json{{"t", num(s.t)},
                               {"u", num(s.u)},
                               {"recovered_t", num(s.recovered_t)},
                               {"point_error", num(s.point_error)},
                               {"base_side", num(s.base_side)},
                               {"far_side", num(s.far_side)},
                               {"pass", s.pass}});
    json j{{"manifold", r.manifold_id},
           {"samples", samples},
           {"max_point_error", num(r.max_point_error)},
           {"min_side_gap", num(r.min_side_gap)},
           {"pass", r.pass}};
    return dump(j);
}

std::string to_json(const EquilibriumCheck& c) { return dump(check_json(c)); }

std::string to_json(const FixedPointAgreement& a) {
    return dump(json{{"profiles", a.profiles},
                     {"agree", a.agree},
                     {"borderline", a.borderline},
                     {"disagree", a.disagree},
                     {"pass", a.pass}});
}

std::string to_json(const MonotoneConstants& c) {
    return dump(json{{"lipschitz", num(c.lipschitz)}, {"kappa", num(c.kappa)}, {"alpha", num(c.alpha)},
                     {"rho", num(c.rho)}});
}

std::string to_json(const ManifoldPoint& p) { return dump(point(p)); }

void write_text_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace mnash
