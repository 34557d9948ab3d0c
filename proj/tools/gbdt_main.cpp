#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gbdt/commands.hpp"

namespace {

using namespace gbdt::cli;

struct Flags {
    std::string config, out, grid, tgrid, lambda, preset;
    double b = 1.0, c = 0.0, d = 1.0;
    double tol_identity = 1e-9, tol_residual = 1e-6;
    bool verify = false;
};

// Precedence, lowest to highest: built-in defaults, config file, GBDT_*
// environment variables, command-line flags (CLI11 already ranks the last
// two).
void add_common_options(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file")
        ->envname("GBDT_CONFIG")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output path (default: stdout)")->envname("GBDT_OUT");
    sub->add_option("--grid", f.grid, "x grid as start:stop:step")->envname("GBDT_GRID");
    sub->add_option("--tgrid", f.tgrid, "t grid as start:stop:step")->envname("GBDT_TGRID");
    sub->add_option("--lambda", f.lambda, "comma-separated real spectral parameters")
        ->envname("GBDT_LAMBDA");
    sub->add_flag("--verify", f.verify, "attach residual verification")->envname("GBDT_VERIFY");
    sub->add_option("--tol-identity", f.tol_identity, "identity tolerance (relative)")
        ->envname("GBDT_TOL_IDENTITY");
    sub->add_option("--tol-residual", f.tol_residual, "residual tolerance floor")
        ->envname("GBDT_TOL_RESIDUAL");
    sub->add_option("--preset", f.preset, "ee2, ee3 or ee36")->envname("GBDT_PRESET");
    sub->add_option("--b", f.b, "preset parameter b")->envname("GBDT_B");
    sub->add_option("--c", f.c, "preset parameter c")->envname("GBDT_C");
    sub->add_option("--d", f.d, "preset parameter d")->envname("GBDT_D");
}

RunConfig build_config(CLI::App* sub, const Flags& f) {
    RunConfig cfg;
    if (sub->count("--config")) {
        std::ifstream in(f.config, std::ios::binary);
        if (!in) throw std::invalid_argument("config: cannot open '" + f.config + "'");
        std::ostringstream body;
        body << in.rdbuf();
        apply_config_json(cfg, body.str());
    }
    if (sub->count("--out")) cfg.out = f.out;
    if (sub->count("--grid")) cfg.grid = gbdt::GridSpec::parse(f.grid);
    if (sub->count("--tgrid")) cfg.tgrid = gbdt::GridSpec::parse(f.tgrid);
    if (sub->count("--lambda")) cfg.lambdas = parse_lambda_list(f.lambda);
    if (sub->count("--verify")) cfg.verify = f.verify;
    if (sub->count("--tol-identity")) cfg.tol_identity = f.tol_identity;
    if (sub->count("--tol-residual")) cfg.tol_residual = f.tol_residual;
    if (sub->count("--preset")) cfg.preset = f.preset;
    if (sub->count("--b")) cfg.b = f.b;
    if (sub->count("--c")) cfg.c = f.c;
    if (sub->count("--d")) cfg.d = f.d;
    if (cfg.tol_identity <= 0.0 || cfg.tol_residual <= 0.0)
        throw std::invalid_argument("config: tolerances must be positive");
    return cfg;
}

template <typename F>
int run_command(const RunConfig& cfg, F&& body) {
    try {
        if (!cfg.out.empty()) {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) throw std::invalid_argument("config: cannot open '" + cfg.out + "'");
            return body(file);
        }
        return body(std::cout);
    } catch (const gbdt::ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const gbdt::InconsistentRoot& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const gbdt::NoDressing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const gbdt::GridTooCoarse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const gbdt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit solutions of matrix Schrodinger and KdV equations"};
    app.require_subcommand(1);

    Flags flags;
    std::string example_id;

    CLI::App* check = app.add_subcommand("check", "validate the input triple and root");
    CLI::App* potential = app.add_subcommand("potential", "tabulate the transformed potential");
    CLI::App* solve = app.add_subcommand("solve", "tabulate transformed solutions per lambda");
    CLI::App* dynamic =
        app.add_subcommand("dynamic", "tabulate the time-dependent solution on x,t");
    CLI::App* kdv = app.add_subcommand("kdv", "tabulate the KdV solution on x,t");
    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
    CLI::App* example = app.add_subcommand("example", "print a preset config as JSON");
    for (CLI::App* sub : {check, potential, solve, dynamic, kdv, verify})
        add_common_options(sub, flags);
    example->add_option("id", example_id, "ee2, ee3 or ee36")->required();
    std::string example_out;
    example->add_option("--out", example_out, "output path (default: stdout)")
        ->envname("GBDT_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (example->parsed()) {
            RunConfig cfg;
            cfg.out = example_out;
            return run_command(cfg, [&](std::ostream& out) {
                return cmd_example(example_id, out, std::cerr);
            });
        }
        CLI::App* sub = app.get_subcommands().front();
        const RunConfig cfg = build_config(sub, flags);
        if (sub == check)
            return run_command(cfg,
                               [&](std::ostream& out) { return cmd_check(cfg, out, std::cerr); });
        if (sub == potential)
            return run_command(
                cfg, [&](std::ostream& out) { return cmd_potential(cfg, out, std::cerr); });
        if (sub == solve)
            return run_command(cfg,
                               [&](std::ostream& out) { return cmd_solve(cfg, out, std::cerr); });
        if (sub == dynamic)
            return run_command(
                cfg, [&](std::ostream& out) { return cmd_dynamic(cfg, out, std::cerr); });
        if (sub == kdv)
            return run_command(cfg,
                               [&](std::ostream& out) { return cmd_kdv(cfg, out, std::cerr); });
        if (sub == verify)
            return run_command(
                cfg, [&](std::ostream& out) { return cmd_verify(cfg, out, std::cerr); });
        std::cerr << "error: no command\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const gbdt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericFailure;
    }
}
