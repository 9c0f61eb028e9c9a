#include "qheis/cli.hpp"

#include <filesystem>
#include <ostream>

#include "qheis/errors.hpp"
#include "qheis/output.hpp"

namespace qheis {

namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " +
                          ec.message());
    return dir;
}

void run_anneal_command(const RunConfig& cfg, std::ostream& out) {
    const AnnealConfig anneal_cfg = cfg.resolve();
    const AnnealReport report = run_anneal(anneal_cfg, cfg.label());
    const fs::path dir = prepare_out_dir(cfg);
    write_trajectory_csv((dir / "trajectory.csv").string(), report.trajectory);
    write_report_json((dir / "report.json").string(), report, cfg);
    out << "wrote " << (dir / "trajectory.csv").string() << " and "
        << (dir / "report.json").string() << "\n";
}

void run_spectrum_command(const RunConfig& cfg, std::ostream& out) {
    const AnnealConfig anneal_cfg = cfg.resolve();
    AnnealHamiltonian ah(build_exchange_zeeman(anneal_cfg.graph, anneal_cfg.fields.b0),
                         build_staggered_driver(anneal_cfg.graph.n_spins,
                                                anneal_cfg.fields.b_prime),
                         AnnealSchedule(anneal_cfg.tau));
    std::vector<double> grid(cfg.spectrum_points);
    if (cfg.spectrum_points == 1) {
        grid[0] = 0.0;
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid[i] = static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        }
    }
    const SpectrumSeries series = spectrum_series(ah, grid);
    const fs::path dir = prepare_out_dir(cfg);
    write_spectrum_csv((dir / "spectrum.csv").string(), series);
    out << "wrote " << (dir / "spectrum.csv").string() << "\n";
}

void run_ground_command(const RunConfig& cfg, std::ostream& out) {
    const AnnealConfig anneal_cfg = cfg.resolve();
    const SparseHermitian hf = build_exchange_zeeman(anneal_cfg.graph, anneal_cfg.fields.b0);
    GroundOutput g;
    g.label = cfg.label();
    g.n_spins = anneal_cfg.graph.n_spins;
    g.eigen = eigen_decompose(hf);
    g.space = ground_space(g.eigen, anneal_cfg.degeneracy_tol);
    auto lowest = g.eigen.eigenvector(0);
    StateVector ground_vec(std::vector<cplx>(lowest.begin(), lowest.end()));
    g.dominants = dominant_states(ground_vec, kDominantThreshold);
    const SparseHermitian s2 = build_total_spin_squared(anneal_cfg.graph.n_spins);
    g.spin = total_spin_expectations(ground_vec, s2, anneal_cfg.graph.n_spins);
    if (!anneal_cfg.ring_cycle.empty()) {
        g.frustration = frustration_parity(anneal_cfg.ring_cycle);
    }
    const fs::path dir = prepare_out_dir(cfg);
    write_ground_json((dir / "ground.json").string(), g);
    out << "wrote " << (dir / "ground.json").string() << "\n";
}

void run_presets_command(std::ostream& out) {
    for (const auto& name : preset_names()) {
        const ExperimentPreset p = preset(name);
        out << name << "\n    " << p.description << "\n";
        for (const auto& e : p.expected) {
            out << "    expects " << e.quantity << " = " << e.value << " +/- " << e.tolerance
                << " (" << e.source << ")\n";
        }
    }
}

} // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NumericalError*>(&e) != nullptr) return kExitNumericalFailure;
    if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIoError;
    return kExitConfigError;
}

int dispatch(const std::string& command, const RunConfig& cfg, std::ostream& out,
             std::ostream& err) {
    try {
        if (command == "anneal") {
            run_anneal_command(cfg, out);
        } else if (command == "spectrum") {
            run_spectrum_command(cfg, out);
        } else if (command == "ground") {
            run_ground_command(cfg, out);
        } else if (command == "presets") {
            run_presets_command(out);
        } else {
            err << "error: unknown command '" << command
                << "' (expected anneal, spectrum, ground or presets)\n";
            return kExitConfigError;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace qheis
