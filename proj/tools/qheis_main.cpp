// Command-line front end: quantum annealing of Heisenberg spin chains.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qheis/cli.hpp"
#include "qheis/errors.hpp"

namespace {

struct CommandArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
};

void add_common_options(CLI::App* cmd, CommandArgs& args) {
    auto* cfg = cmd->add_option("config", args.config_path, "JSON run configuration");
    cfg->check(CLI::ExistingFile);
    auto* preset =
        cmd->add_option("--preset", args.preset, "preset name (shorthand for a config file)");
    preset->excludes(cfg);
    cfg->excludes(preset);
    cmd->add_option("--out-dir", args.out_dir, "override the output directory");
}

int run_command(const std::string& name, const CommandArgs& args) {
    try {
        qheis::RunConfig cfg;
        if (!args.preset.empty()) {
            cfg = qheis::config_for_preset(args.preset);
        } else if (!args.config_path.empty()) {
            cfg = qheis::parse_config_file(args.config_path);
        } else if (name != "presets") {
            std::cerr << "error: " << name << " needs a config file or --preset\n";
            return qheis::kExitConfigError;
        }
        if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
        return qheis::dispatch(name, cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qheis::exit_code_for(e);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum annealing simulator for spin-1/2 Heisenberg chains"};
    app.require_subcommand(1);

    CommandArgs anneal_args, spectrum_args, ground_args;
    auto* anneal = app.add_subcommand(
        "anneal", "integrate the anneal; writes trajectory.csv and report.json");
    add_common_options(anneal, anneal_args);
    auto* spectrum = app.add_subcommand(
        "spectrum", "instantaneous spectra over the schedule; writes spectrum.csv");
    add_common_options(spectrum, spectrum_args);
    auto* ground = app.add_subcommand(
        "ground", "exact diagonalization of the final Hamiltonian; writes ground.json");
    add_common_options(ground, ground_args);
    app.add_subcommand("presets", "list the built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? qheis::kExitOk : qheis::kExitConfigError;
    }

    if (anneal->parsed()) return run_command("anneal", anneal_args);
    if (spectrum->parsed()) return run_command("spectrum", spectrum_args);
    if (ground->parsed()) return run_command("ground", ground_args);
    return run_command("presets", CommandArgs{});
}
