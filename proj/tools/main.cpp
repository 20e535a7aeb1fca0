#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "fractalhisto/config.hpp"
#include "fractalhisto/errors.hpp"
#include "fractalhisto/run.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string function_csv;
    std::string check_target;
    std::optional<std::uint64_t> seed;
    std::optional<long> points;
    std::optional<long> burn_in;
    std::optional<int> max_p;
    std::optional<std::size_t> grid_k;
};

int dispatch(fractalhisto::RunMode mode, const CliOptions& opts) {
    using namespace fractalhisto;
    RunConfig cfg = load_config(opts.config_path);
    cfg.mode = mode;
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.points) cfg.attractor.points = *opts.points;
    if (opts.burn_in) cfg.attractor.burn_in = *opts.burn_in;
    if (opts.max_p) cfg.diagnose.max_p = *opts.max_p;
    if (opts.grid_k) cfg.solver.K = *opts.grid_k;
    if (!opts.function_csv.empty()) cfg.function_csv = opts.function_csv;
    if (!opts.check_target.empty()) {
        if (opts.check_target == "modulus") {
            cfg.check.target = CheckTarget::modulus;
        } else if (opts.check_target == "contraction") {
            cfg.check.target = CheckTarget::contraction;
        } else if (opts.check_target == "banach-witness") {
            cfg.check.target = CheckTarget::banach_witness;
        } else {
            throw ArgumentError("unknown check target '" + opts.check_target +
                                "' (known: modulus, contraction, banach-witness)");
        }
    }
    validate_config(cfg);
    RunResult result = run(cfg);
    std::cout << result.report;
    return result.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractalhisto: fractal histopolation functions from Rakotch-contraction IFSs"};
    app.require_subcommand(1);

    CliOptions opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", opts.config_path, "JSON configuration file")->required();
        cmd->add_option("--seed", opts.seed, "override the config seed");
        cmd->add_option("--grid", opts.grid_k, "override solver.K");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the histopolation offsets d");
    add_common(solve);
    CLI::App* construct = app.add_subcommand("construct", "compute the RB fixed point");
    add_common(construct);
    CLI::App* verify = app.add_subcommand("verify", "verify a function CSV against the system");
    add_common(verify);
    verify->add_option("function", opts.function_csv, "function CSV to verify")->required();
    CLI::App* attractor = app.add_subcommand("attractor", "chaos-game attractor point cloud");
    add_common(attractor);
    attractor->add_option("--points", opts.points, "number of points to keep");
    attractor->add_option("--burn-in", opts.burn_in, "points to discard before recording");
    CLI::App* diagnose = app.add_subcommand("diagnose", "oscillation and integrability tables");
    add_common(diagnose);
    diagnose->add_option("--max-p", opts.max_p, "maximum word length");
    CLI::App* check = app.add_subcommand("check", "verify contraction/modulus properties");
    check->add_option("target", opts.check_target, "modulus | contraction | banach-witness")
        ->required();
    add_common(check);

    CLI11_PARSE(app, argc, argv);

    try {
        using fractalhisto::RunMode;
        if (solve->parsed()) return dispatch(RunMode::solve, opts);
        if (construct->parsed()) return dispatch(RunMode::construct, opts);
        if (verify->parsed()) return dispatch(RunMode::verify, opts);
        if (attractor->parsed()) return dispatch(RunMode::attractor, opts);
        if (diagnose->parsed()) return dispatch(RunMode::diagnose, opts);
        if (check->parsed()) return dispatch(RunMode::check, opts);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const fractalhisto::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
