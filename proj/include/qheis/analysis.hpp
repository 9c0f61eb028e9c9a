#pragma once

#include <vector>

#include "qheis/basis.hpp"
#include "qheis/operators.hpp"
#include "qheis/spectrum.hpp"
#include "qheis/state.hpp"

namespace qheis {

/// A basis state carrying significant weight in a superposition.
struct DominantState {
    std::size_t index = 0;
    double probability = 0.0;
    cplx amplitude{0.0, 0.0}; // after global phase fixing
    SpinConfiguration pattern;
};

struct FrustrationReport {
    std::vector<Bond> cycle;
    int negative_count = 0;
    bool frustrated = false; // iff negative_count is odd
};

/// p_n = |C_n|^2.
std::vector<double> probabilities(const StateVector& state);

/// Multiply by a unit scalar so the largest-modulus amplitude (ties broken by
/// lowest index) is real and positive.
StateVector fix_global_phase(const StateVector& state);

/// All entries with p_n >= threshold, sorted by probability descending
/// (index ascending on ties), amplitudes taken from the phase-fixed state.
std::vector<DominantState> dominant_states(const StateVector& state, double threshold);

/// arg(C_j) - arg(C_i) wrapped to (-pi, pi]. Throws UndefinedPhaseError when
/// either amplitude modulus is at or below 1e-6.
double relative_phase(const StateVector& state, std::size_t i, std::size_t j);

/// Squared norm of the projection onto span(gs.basis).
double fidelity_to_subspace(const StateVector& state, const GroundSpace& gs);

/// (<S^2>, <S_z>): the first through the prebuilt operator, the second from
/// bit counts.
struct SpinExpectations {
    double s_squared = 0.0;
    double s_z = 0.0;
};
SpinExpectations total_spin_expectations(const StateVector& state, const SparseHermitian& s2,
                                         int n_spins);

/// Sign parity of an explicitly supplied closed cycle: frustrated iff the
/// number of negative exchange constants is odd. The bonds must chain into a
/// single closed loop over distinct spins.
FrustrationReport frustration_parity(const std::vector<Bond>& cycle);

} // namespace qheis
