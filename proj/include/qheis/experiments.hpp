#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qheis/analysis.hpp"
#include "qheis/operators.hpp"
#include "qheis/propagator.hpp"
#include "qheis/schedule.hpp"
#include "qheis/spectrum.hpp"

namespace qheis {

/// Everything needed to run one anneal end to end.
struct AnnealConfig {
    CouplingGraph graph;
    FieldParams fields;
    double tau = 500.0;
    IntegratorConfig integrator;
    double degeneracy_tol = 1e-6;
    std::vector<std::size_t> track; // empty = automatic tracking
    /// Bonds in ring order when the graph is a single cycle; drives the
    /// frustration report. Empty for non-cyclic graphs.
    std::vector<Bond> ring_cycle;
};

/// A target quantity a preset is known to reproduce. `tolerance` is the
/// allowed absolute deviation; `source` says where the number comes from
/// ("reference" for published values, "analytic" for derived ones).
struct ExpectedValue {
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
    std::string source;
};

struct ExperimentPreset {
    std::string name;
    std::string description;
    AnnealConfig config;
    std::vector<ExpectedValue> expected;
};

struct EnergySummary {
    double driver_ground = 0.0; // exact: -N*b_prime/2
    double final_ground = 0.0;
    double final_first = 0.0;
    double final_second = 0.0;
    double gap_1_2 = 0.0;
    double gap_2_3 = 0.0;
};

/// Results that require the dense eigensolver; omitted past its size guard.
struct GroundAnalysis {
    EnergySummary energies;
    double fidelity_ground = 0.0;      // to the tol-resolved ground space
    double fidelity_ground_pair = 0.0; // to the two lowest levels
};

struct RelativePhaseEntry {
    std::size_t from = 0;
    std::size_t to = 0;
    double phase = 0.0;
};

struct AnnealReport {
    std::string label;
    int n_spins = 0;
    Trajectory trajectory;
    std::vector<double> final_probabilities;
    double probability_sum = 0.0;
    std::vector<DominantState> dominants;     // threshold kDominantThreshold
    std::vector<RelativePhaseEntry> phases;   // each dominant vs the leading one
    SpinExpectations spin;
    std::optional<GroundAnalysis> ground;
    std::optional<FrustrationReport> frustration;
};

inline constexpr double kDominantThreshold = 0.05;

/// The fixed preset list: ferro2, antiferro2, ferro3, frustrated3,
/// alternating9, frustrated9. Unknown names raise ConfigError listing them.
ExperimentPreset preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// prepare -> evolve -> eigendecompose -> analyze. Deterministic per config.
AnnealReport run_anneal(const AnnealConfig& cfg, const std::string& label = {});
AnnealReport run_preset(const ExperimentPreset& p);

/// Brute-force propagator: split [0, tau] into n_intervals and apply the
/// exact exponential of the frozen midpoint Hamiltonian on each, via dense
/// eigendecomposition. Norm-preserving by construction. Dimension <= 16.
StateVector oracle_propagate(const AnnealHamiltonian& ah, const StateVector& initial,
                             std::int64_t n_intervals);

/// |<oracle|evolve>|^2 for a preset with at most 4 spins, oracle intervals
/// matching the integrator resolution.
double compare_oracle(const ExperimentPreset& p);

} // namespace qheis
