#include "qheis/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

constexpr double kPhaseCutoff = 1e-6;

int spins_for_dimension(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw ContractError("state dimension is not a power of two");
    }
    return std::countr_zero(dim);
}

// Pivot for phase fixing: lowest index whose modulus ties the maximum.
// Amplitudes within a relative 1e-4 of the maximum count as tied, so a pair
// that is degenerate up to integrator noise still picks the same pivot.
std::size_t largest_amplitude_index(const StateVector& state) {
    double max_p = 0.0;
    for (std::size_t n = 0; n < state.dimension(); ++n) {
        max_p = std::max(max_p, std::norm(state[n]));
    }
    const double cutoff = max_p * (1.0 - 2e-4); // 1e-4 on the modulus
    for (std::size_t n = 0; n < state.dimension(); ++n) {
        if (std::norm(state[n]) >= cutoff) return n;
    }
    return 0;
}

} // namespace

std::vector<double> probabilities(const StateVector& state) {
    state.require_normalized(1e-9);
    std::vector<double> p(state.dimension());
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm(state[n]);
    return p;
}

StateVector fix_global_phase(const StateVector& state) {
    const std::size_t pivot = largest_amplitude_index(state);
    const double mod = std::abs(state[pivot]);
    if (mod == 0.0) throw ContractError("cannot phase-fix the zero vector");
    const cplx rot = std::conj(state[pivot]) / mod;
    StateVector out = state;
    for (auto& a : out.amplitudes) a *= rot;
    // the pivot is now exactly real
    out[pivot] = cplx(mod, 0.0);
    return out;
}

std::vector<DominantState> dominant_states(const StateVector& state, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw ContractError("dominant-state threshold must lie in (0, 1)");
    }
    state.require_normalized(1e-9);
    const SpinBasis basis(spins_for_dimension(state.dimension()));
    const StateVector fixed = fix_global_phase(state);
    std::vector<DominantState> out;
    for (std::size_t n = 0; n < fixed.dimension(); ++n) {
        const double p = std::norm(fixed[n]);
        if (p >= threshold) {
            out.push_back({n, p, fixed[n], index_to_spins(n, basis)});
        }
    }
    std::sort(out.begin(), out.end(), [](const DominantState& a, const DominantState& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.index < b.index;
    });
    return out;
}

double relative_phase(const StateVector& state, std::size_t i, std::size_t j) {
    if (i >= state.dimension() || j >= state.dimension()) {
        throw RangeError("relative_phase: index out of range");
    }
    const double mi = std::abs(state[i]);
    const double mj = std::abs(state[j]);
    if (mi <= kPhaseCutoff || mj <= kPhaseCutoff) {
        throw UndefinedPhaseError("relative phase undefined: |C_" + std::to_string(i) +
                                  "| = " + std::to_string(mi) + ", |C_" + std::to_string(j) +
                                  "| = " + std::to_string(mj));
    }
    double d = std::arg(state[j]) - std::arg(state[i]);
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    return d;
}

double fidelity_to_subspace(const StateVector& state, const GroundSpace& gs) {
    double total = 0.0;
    for (const auto& b : gs.basis) {
        if (b.size() != state.dimension()) {
            throw ContractError("fidelity: subspace dimension mismatch");
        }
        cplx proj{0.0, 0.0};
        for (std::size_t n = 0; n < b.size(); ++n) proj += b[n] * state[n];
        total += std::norm(proj);
    }
    return total;
}

SpinExpectations total_spin_expectations(const StateVector& state, const SparseHermitian& s2,
                                         int n_spins) {
    state.require_normalized(1e-9);
    if (s2.dimension != state.dimension()) {
        throw ContractError("total_spin_expectations: operator dimension mismatch");
    }
    SpinExpectations out;
    std::vector<cplx> scratch(state.dimension());
    kernels::spmv(s2, state.data(), scratch.data());
    out.s_squared = kernels::dot(state.dimension(), state.data(), scratch.data()).real();
    double sz = 0.0;
    for (std::size_t n = 0; n < state.dimension(); ++n) {
        const int up = std::popcount(n);
        sz += std::norm(state[n]) * 0.5 * (2 * up - n_spins);
    }
    out.s_z = sz;
    return out;
}

FrustrationReport frustration_parity(const std::vector<Bond>& cycle) {
    if (cycle.size() < 3) {
        throw ConfigError("frustration cycle needs at least 3 bonds");
    }
    auto shared_spin = [](const Bond& a, const Bond& b) -> int {
        int found = 0, spin = 0;
        for (int x : {a.k, a.m}) {
            if (x == b.k || x == b.m) {
                ++found;
                spin = x;
            }
        }
        if (found != 1) {
            throw ConfigError("bonds (" + std::to_string(a.k) + "," + std::to_string(a.m) +
                              ") and (" + std::to_string(b.k) + "," + std::to_string(b.m) +
                              ") do not chain into a cycle");
        }
        return spin;
    };
    const std::size_t L = cycle.size();
    std::vector<int> chain(L);
    for (std::size_t i = 0; i < L; ++i) chain[i] = shared_spin(cycle[i], cycle[(i + 1) % L]);
    std::vector<int> sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("frustration cycle revisits a spin");
    }
    FrustrationReport report;
    report.cycle = cycle;
    for (const Bond& b : cycle) {
        if (!std::isfinite(b.j) || b.j == 0.0) {
            throw ConfigError("frustration cycle contains a bond with invalid J");
        }
        if (b.j < 0.0) ++report.negative_count;
    }
    report.frustrated = (report.negative_count % 2) == 1;
    return report;
}

} // namespace qheis
