#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"Nash equilibria on Hadamard manifolds: examples, solvers, probes and batteries"};
    app.require_subcommand(1);

    std::string id, variant, out_dir = ".";
    auto* example = app.add_subcommand("example", "Verify a registered example");
    example->add_option("id", id, "6.1, 6.2, 6.3, 6.4, decay or zero")->required();
    example->add_option("--variant", variant, "6.2: d1|d2|d3, 6.3: a|b");
    example->add_option("--out", out_dir, "Output directory");

    std::string config, method, solve_out = ".";
    auto* solve = app.add_subcommand("solve", "Run the discrete or continuous dynamics from a config");
    solve->add_option("--config", config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
    solve->add_option("--method", method, "dds or cds")->required()->check(CLI::IsMember({"dds", "cds"}));
    solve->add_option("--out", solve_out, "Directory for outputs not named in the config");

    std::string probe_config, kind;
    std::optional<double> alpha, rho;
    auto* probe = app.add_subcommand("probe", "Probe the coercivity or contraction hypothesis");
    probe->add_option("--config", probe_config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
    probe->add_option("--kind", kind, "contraction or coercivity")
        ->required()
        ->check(CLI::IsMember({"contraction", "coercivity"}));
    probe->add_option("--alpha", alpha, "Step size");
    probe->add_option("--rho", rho, "Contraction margin");

    std::string key, battery_out;
    auto* battery = app.add_subcommand("battery", "Projection and curvature battery on a manifold");
    battery->add_option("--manifold", key, "euclidean, symmetric, halfplane, spd2, spd3, spd5, product, detband-euclidean")
        ->required();
    battery->add_option("--out", battery_out, "Report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mnash::cli::kConfigError;
    }

    if (*example) return mnash::cli::run_example(id, variant, out_dir, std::cerr);
    if (*solve) return mnash::cli::run_solve(config, method, solve_out, std::cerr);
    if (*probe) return mnash::cli::run_probe(probe_config, kind, alpha, rho, std::cout, std::cerr);
    return mnash::cli::run_battery(key, battery_out, std::cout, std::cerr);
}
