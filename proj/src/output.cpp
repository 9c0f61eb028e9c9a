#include "qheis/output.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path);
}

ordered_json amplitude_json(const cplx& a) {
    return ordered_json{{"re", a.real()}, {"im", a.imag()}};
}

ordered_json dominants_json(const std::vector<DominantState>& dominants) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : dominants) {
        arr.push_back(ordered_json{{"index", d.index},
                                   {"pattern", d.pattern.to_string()},
                                   {"probability", d.probability},
                                   {"amplitude", amplitude_json(d.amplitude)}});
    }
    return arr;
}

ordered_json frustration_json(const std::optional<FrustrationReport>& fr) {
    if (!fr) return nullptr;
    ordered_json bonds = ordered_json::array();
    for (const auto& b : fr->cycle) bonds.push_back(ordered_json::array({b.k, b.m, b.j}));
    return ordered_json{{"cycle", bonds},
                        {"negative_count", fr->negative_count},
                        {"frustrated", fr->frustrated}};
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t";
    for (std::size_t idx : traj.tracked) out << ",p_" << idx;
    out << ",norm\n";
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        out << format_number(traj.times[j]);
        for (double p : traj.probabilities[j]) out << ',' << format_number(p);
        out << ',' << format_number(traj.norms[j]) << '\n';
    }
    close_out(out, path);
}

void write_spectrum_csv(const std::string& path, const SpectrumSeries& series) {
    auto out = open_out(path);
    out << "s";
    const std::size_t dim = series.levels.empty() ? 0 : series.levels.front().size();
    for (std::size_t i = 1; i <= dim; ++i) out << ",E_" << i;
    out << '\n';
    for (std::size_t g = 0; g < series.s_grid.size(); ++g) {
        out << format_number(series.s_grid[g]);
        for (double e : series.levels[g]) out << ',' << format_number(e);
        out << '\n';
    }
    close_out(out, path);
}

std::string report_to_json(const AnnealReport& report, const RunConfig& cfg) {
    const AnnealConfig resolved = cfg.resolve();
    ordered_json j;
    j["label"] = report.label;
    j["n_spins"] = report.n_spins;
    ordered_json couplings = ordered_json::array();
    for (const auto& b : resolved.graph.bonds) {
        couplings.push_back(ordered_json::array({b.k, b.m, b.j}));
    }
    j["config"] = ordered_json{{"couplings", couplings},
                               {"b0", resolved.fields.b0},
                               {"b_prime", resolved.fields.b_prime},
                               {"tau", resolved.tau},
                               {"dt", resolved.integrator.dt},
                               {"samples", resolved.integrator.n_samples},
                               {"degeneracy_tol", resolved.degeneracy_tol}};
    j["tracked_indices"] = report.trajectory.tracked;
    j["max_norm_drift"] = report.trajectory.max_norm_drift;
    j["final_probabilities"] = report.final_probabilities;
    j["probability_sum"] = report.probability_sum;
    j["dominant_states"] = dominants_json(report.dominants);
    ordered_json phases = ordered_json::array();
    for (const auto& p : report.phases) {
        phases.push_back(ordered_json{{"from", p.from}, {"to", p.to}, {"phase", p.phase}});
    }
    j["relative_phases"] = phases;
    if (report.ground) {
        const auto& g = *report.ground;
        j["fidelity"] = ordered_json{{"ground_space", g.fidelity_ground},
                                     {"ground_pair", g.fidelity_ground_pair}};
        j["energies"] = ordered_json{{"driver_ground", g.energies.driver_ground},
                                     {"final_ground", g.energies.final_ground},
                                     {"final_first_excited", g.energies.final_first},
                                     {"final_second_excited", g.energies.final_second},
                                     {"gap_1_2", g.energies.gap_1_2},
                                     {"gap_2_3", g.energies.gap_2_3}};
    } else {
        j["fidelity"] = nullptr;
        j["energies"] = nullptr;
    }
    j["spin"] = ordered_json{{"s_squared", report.spin.s_squared}, {"s_z", report.spin.s_z}};
    j["frustration"] = frustration_json(report.frustration);
    return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const AnnealReport& report,
                       const RunConfig& cfg) {
    auto out = open_out(path);
    out << report_to_json(report, cfg);
    close_out(out, path);
}

std::string ground_to_json(const GroundOutput& g) {
    ordered_json j;
    j["label"] = g.label;
    j["n_spins"] = g.n_spins;
    j["energies"] = g.eigen.eigenvalues;
    j["ground"] = ordered_json{{"energy", g.space.energy},
                               {"degeneracy", g.space.degeneracy()},
                               {"degeneracy_tol", g.space.degeneracy_tol},
                               {"dominant_states", dominants_json(g.dominants)}};
    const auto& ev = g.eigen.eigenvalues;
    j["gaps"] = ordered_json{
        {"gap_1_2", ev.size() > 1 ? ev[1] - ev[0] : 0.0},
        {"gap_2_3", ev.size() > 2 ? ev[2] - ev[1] : 0.0},
    };
    j["spin"] = ordered_json{{"s_squared", g.spin.s_squared}, {"s_z", g.spin.s_z}};
    j["frustration"] = frustration_json(g.frustration);
    return j.dump(2) + "\n";
}

void write_ground_json(const std::string& path, const GroundOutput& g) {
    auto out = open_out(path);
    out << ground_to_json(g);
    close_out(out, path);
}

} // namespace qheis
