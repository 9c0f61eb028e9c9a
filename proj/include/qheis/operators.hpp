#pragma once

#include <vector>

#include "qheis/basis.hpp"
#include "qheis/sparse.hpp"
#include "qheis/state.hpp"

namespace qheis {

/// One exchange bond J_km between spins k < m (1-based).
struct Bond {
    int k = 0;
    int m = 0;
    double j = 0.0;
};

/// Exchange topology. Bonds are normalized to k < m on construction; duplicate
/// pairs, self-bonds, indices beyond N and zero or non-finite J are rejected.
struct CouplingGraph {
    int n_spins = 0;
    std::vector<Bond> bonds;

    CouplingGraph(int n, std::vector<Bond> bond_list);
};

/// Dimensionless field magnitudes: b0 multiplies the uniform z term (normally
/// 1, it is the energy unit), b_prime the staggered x driver.
struct FieldParams {
    double b0 = 1.0;
    double b_prime = 20.0;

    void validate() const;
};

/// H_final = -4 sum_bonds J_km S_k.S_m + b0 sum_k S_k^z.
/// Diagonal of |n>: sum_bonds (-J if the two bits agree, +J otherwise)
/// + b0*(n_up - n_down)/2; off-diagonal -2J between states that swap opposite
/// bits across a bond (flip-flop).
SparseHermitian build_exchange_zeeman(const CouplingGraph& graph, double b0);

/// H_driver = b_prime sum_k (-1)^(k+1) S_k^x: purely off-diagonal, entry
/// (-1)^(k+1)*b_prime/2 between states differing in bit k alone.
SparseHermitian build_staggered_driver(int n_spins, double b_prime);

/// (sum_k S_k)^2 = 3N/4 I + 2 sum_{k<m} S_k.S_m, for total-spin diagnostics.
SparseHermitian build_total_spin_squared(int n_spins);

/// Exact sparse matrix-vector product; result is not normalized.
StateVector apply(const SparseHermitian& h, const StateVector& v);

} // namespace qheis
