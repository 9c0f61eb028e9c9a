#pragma once

#include <string>

#include "qheis/analysis.hpp"
#include "qheis/config.hpp"
#include "qheis/experiments.hpp"
#include "qheis/propagator.hpp"
#include "qheis/spectrum.hpp"

namespace qheis {

/// 12 significant digits, '%g' style; shared by every CSV column.
std::string format_number(double v);

/// Columns: t, p_<idx> per tracked index, norm.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Columns: s, E_1..E_D (ascending per row).
void write_spectrum_csv(const std::string& path, const SpectrumSeries& series);

/// Full anneal report (config echo, probabilities, dominant states with
/// amplitudes as explicit re/im pairs, fidelities, energies, spin, frustration).
std::string report_to_json(const AnnealReport& report, const RunConfig& cfg);
void write_report_json(const std::string& path, const AnnealReport& report,
                       const RunConfig& cfg);

/// Exact-diagonalization summary of the final Hamiltonian.
struct GroundOutput {
    std::string label;
    int n_spins = 0;
    EigenDecomposition eigen;
    GroundSpace space;
    std::vector<DominantState> dominants; // of the lowest eigenvector
    SpinExpectations spin;
    std::optional<FrustrationReport> frustration;
};
std::string ground_to_json(const GroundOutput& g);
void write_ground_json(const std::string& path, const GroundOutput& g);

} // namespace qheis
