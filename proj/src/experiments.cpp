#include "qheis/experiments.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

constexpr std::size_t kOracleDimensionLimit = 16;

std::vector<Bond> ring_bonds(int n, double j_odd, double j_even) {
    // bond (k, k+1) gets j_odd for odd k, j_even for even k; closing bond
    // (n, 1) continues the pattern of its leading index.
    std::vector<Bond> bonds;
    for (int k = 1; k < n; ++k) {
        bonds.push_back({k, k + 1, (k % 2 == 1) ? j_odd : j_even});
    }
    bonds.push_back({n, 1, (n % 2 == 1) ? j_odd : j_even});
    return bonds;
}

AnnealConfig make_config(int n, std::vector<Bond> bonds, std::vector<Bond> cycle) {
    AnnealConfig cfg{CouplingGraph(n, std::move(bonds)), FieldParams{1.0, 20.0}, 500.0,
                     IntegratorConfig{}, 1e-6, {}, std::move(cycle)};
    return cfg;
}

ExperimentPreset make_preset(const std::string& name) {
    if (name == "ferro2") {
        ExperimentPreset p{name,
                           "two spins, ferromagnetic J = +5: anneal reaches |00>",
                           make_config(2, {{1, 2, 5.0}}, {}),
                           {{"final p_0", 1.0, 0.01, "reference"},
                            {"fidelity to ground space", 1.0, 0.01, "analytic"}}};
        return p;
    }
    if (name == "antiferro2") {
        ExperimentPreset p{name,
                           "two spins, antiferromagnetic J = -5: singlet (|01>-|10>)/sqrt(2)",
                           make_config(2, {{1, 2, -5.0}}, {}),
                           {{"final p_1", 0.5, 0.01, "reference"},
                            {"final p_2", 0.5, 0.01, "reference"},
                            {"phase C_1 -> C_2", 3.14159265358979, 0.1, "reference"}}};
        return p;
    }
    if (name == "ferro3") {
        std::vector<Bond> tri{{1, 2, 5.0}, {1, 3, 5.0}, {2, 3, 5.0}};
        std::vector<Bond> cycle{{1, 2, 5.0}, {2, 3, 5.0}, {1, 3, 5.0}};
        ExperimentPreset p{name,
                           "ferromagnetic triangle, all J = +5",
                           make_config(3, tri, cycle),
                           {{"final p_0", 1.0, 0.01, "analytic"}}};
        return p;
    }
    if (name == "frustrated3") {
        std::vector<Bond> tri{{1, 2, 5.0}, {1, 3, 5.0}, {2, 3, -5.0}};
        std::vector<Bond> cycle{{1, 2, 5.0}, {2, 3, -5.0}, {1, 3, 5.0}};
        ExperimentPreset p{name,
                           "frustrated triangle, J_12 = J_13 = +5, J_23 = -5",
                           make_config(3, tri, cycle),
                           {{"final p_1", 0.5, 0.02, "reference"},
                            {"final p_2", 0.5, 0.02, "reference"},
                            {"phase C_1 -> C_2", 3.14159265358979, 0.1, "reference"}}};
        return p;
    }
    if (name == "alternating9") {
        auto bonds = ring_bonds(9, 5.0, -5.0);
        ExperimentPreset p{name,
                           "9-spin ring, alternating J = +5 / -5 (five positive bonds)",
                           make_config(9, bonds, bonds),
                           {{"final gap E_3 - E_2", 10.8, 0.2, "reference"},
                            {"final p_102", 0.18, 0.02, "reference"},
                            {"final gap E_2 - E_1", 1.0, 1e-6, "reference"}}};
        return p;
    }
    if (name == "frustrated9") {
        auto bonds = ring_bonds(9, -5.0, 5.0);
        ExperimentPreset p{name,
                           "alternating9 with every exchange sign flipped (frustrated ring)",
                           make_config(9, bonds, bonds),
                           {{"|C_300|", 0.34, 0.02, "reference"},
                            {"|C_308|", 0.34, 0.02, "reference"},
                            {"|C_306|", 0.32, 0.02, "reference"},
                            {"|C_332|", 0.32, 0.02, "reference"},
                            {"final gap E_2 - E_1", 1.0, 1e-6, "reference"}}};
        return p;
    }
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (valid: " + names + ")");
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"ferro2",      "antiferro2",   "ferro3",
                                                "frustrated3", "alternating9", "frustrated9"};
    return names;
}

ExperimentPreset preset(const std::string& name) { return make_preset(name); }

AnnealReport run_anneal(const AnnealConfig& cfg, const std::string& label) {
    cfg.fields.validate();
    const SpinBasis basis(cfg.graph.n_spins);
    AnnealHamiltonian ah(build_exchange_zeeman(cfg.graph, cfg.fields.b0),
                         build_staggered_driver(cfg.graph.n_spins, cfg.fields.b_prime),
                         AnnealSchedule(cfg.tau));
    const StateVector initial = prepare_driver_ground(basis);

    AnnealReport report;
    report.label = label;
    report.n_spins = cfg.graph.n_spins;
    report.trajectory = evolve(ah, initial, cfg.integrator, cfg.track);
    const StateVector& final_state = report.trajectory.final_state;

    report.final_probabilities.resize(basis.dimension);
    double sum = 0.0;
    for (std::size_t n = 0; n < basis.dimension; ++n) {
        report.final_probabilities[n] = std::norm(final_state[n]);
        sum += report.final_probabilities[n];
    }
    report.probability_sum = sum;

    report.dominants = dominant_states(final_state, kDominantThreshold);
    if (report.dominants.size() > 1) {
        const std::size_t lead = report.dominants.front().index;
        for (std::size_t i = 1; i < report.dominants.size(); ++i) {
            const std::size_t idx = report.dominants[i].index;
            report.phases.push_back({lead, idx, relative_phase(final_state, lead, idx)});
        }
    }

    const SparseHermitian s2 = build_total_spin_squared(cfg.graph.n_spins);
    report.spin = total_spin_expectations(final_state, s2, cfg.graph.n_spins);

    if (basis.dimension <= kDenseDimensionLimit) {
        const EigenDecomposition eig = eigen_decompose(ah.h_final);
        GroundAnalysis ga;
        ga.energies.driver_ground = -0.5 * cfg.graph.n_spins * cfg.fields.b_prime;
        ga.energies.final_ground = eig.eigenvalues[0];
        ga.energies.final_first = eig.dimension > 1 ? eig.eigenvalues[1] : eig.eigenvalues[0];
        ga.energies.final_second = eig.dimension > 2 ? eig.eigenvalues[2] : ga.energies.final_first;
        ga.energies.gap_1_2 = ga.energies.final_first - ga.energies.final_ground;
        ga.energies.gap_2_3 = ga.energies.final_second - ga.energies.final_first;
        ga.fidelity_ground = fidelity_to_subspace(final_state, ground_space(eig, cfg.degeneracy_tol));
        GroundSpace pair;
        pair.energy = eig.eigenvalues[0];
        pair.degeneracy_tol = 0.0;
        for (std::size_t i = 0; i < std::min<std::size_t>(2, eig.dimension); ++i) {
            auto v = eig.eigenvector(i);
            pair.basis.emplace_back(v.begin(), v.end());
        }
        ga.fidelity_ground_pair = fidelity_to_subspace(final_state, pair);
        report.ground = ga;
    }

    if (!cfg.ring_cycle.empty()) {
        report.frustration = frustration_parity(cfg.ring_cycle);
    }
    return report;
}

AnnealReport run_preset(const ExperimentPreset& p) { return run_anneal(p.config, p.name); }

StateVector oracle_propagate(const AnnealHamiltonian& ah, const StateVector& initial,
                             std::int64_t n_intervals) {
    const std::size_t dim = ah.dimension();
    if (dim > kOracleDimensionLimit) {
        throw CapabilityError("oracle propagator limited to dimension 16, got " +
                              std::to_string(dim));
    }
    if (n_intervals < 1) throw ContractError("oracle needs at least one interval");
    if (initial.dimension() != dim) throw ContractError("oracle: state dimension mismatch");

    const double tau = ah.schedule.tau;
    const double dt = tau / static_cast<double>(n_intervals);
    std::vector<cplx> v = initial.amplitudes;
    std::vector<double> dense(dim * dim);
    std::vector<cplx> w(dim);
    for (std::int64_t i = 0; i < n_intervals; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * dt / tau;
        dense.assign(dim * dim, 0.0); // also restores the moved-from buffer
        for (std::size_t r = 0; r < dim; ++r) {
            const auto& hf = ah.h_final;
            for (std::int64_t e = hf.row_offsets[r]; e < hf.row_offsets[r + 1]; ++e) {
                dense[r * dim + hf.cols[e]] += s * hf.vals[e];
            }
            const auto& hd = ah.h_driver;
            for (std::int64_t e = hd.row_offsets[r]; e < hd.row_offsets[r + 1]; ++e) {
                dense[r * dim + hd.cols[e]] += (1.0 - s) * hd.vals[e];
            }
        }
        const EigenDecomposition eig = eigen_decompose_dense(std::move(dense), dim);
        for (std::size_t k = 0; k < dim; ++k) {
            auto vec = eig.eigenvector(k);
            cplx acc{0.0, 0.0};
            for (std::size_t n = 0; n < dim; ++n) acc += vec[n] * v[n];
            w[k] = acc * std::polar(1.0, -eig.eigenvalues[k] * dt);
        }
        std::fill(v.begin(), v.end(), cplx{0.0, 0.0});
        for (std::size_t k = 0; k < dim; ++k) {
            auto vec = eig.eigenvector(k);
            for (std::size_t n = 0; n < dim; ++n) v[n] += vec[n] * w[k];
        }
    }
    return StateVector(std::move(v));
}

double compare_oracle(const ExperimentPreset& p) {
    if (p.config.graph.n_spins > 4) {
        throw CapabilityError("oracle comparison limited to presets with at most 4 spins");
    }
    const SpinBasis basis(p.config.graph.n_spins);
    AnnealHamiltonian ah(build_exchange_zeeman(p.config.graph, p.config.fields.b0),
                         build_staggered_driver(p.config.graph.n_spins, p.config.fields.b_prime),
                         AnnealSchedule(p.config.tau));
    const StateVector initial = prepare_driver_ground(basis);
    Trajectory traj = evolve(ah, initial, p.config.integrator, p.config.track);
    const auto n_intervals =
        std::max<std::int64_t>(1, std::llround(p.config.tau / p.config.integrator.dt));
    const StateVector oracle = oracle_propagate(ah, initial, n_intervals);
    const double f = std::norm(overlap(oracle, traj.final_state));
    return f / (oracle.norm_sq() * traj.final_state.norm_sq());
}

} // namespace qheis
