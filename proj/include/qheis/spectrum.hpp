#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qheis/schedule.hpp"
#include "qheis/sparse.hpp"
#include "qheis/state.hpp"

namespace qheis {

/// Full spectrum of a real-symmetric matrix, eigenvalues ascending with
/// matching orthonormal eigenvectors. Each eigenvector is sign-fixed so its
/// largest-magnitude component is positive.
struct EigenDecomposition {
    std::size_t dimension = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors; // eigenvector i at [i*dim, (i+1)*dim)

    std::span<const double> eigenvector(std::size_t i) const {
        return {eigenvectors.data() + i * dimension, dimension};
    }
};

/// Sorted eigenvalue rows over a progress grid.
struct SpectrumSeries {
    std::vector<double> s_grid;
    std::vector<std::vector<double>> levels; // levels[g] ascending, length = dim
};

/// Lowest eigenvalue and an orthonormal basis of every eigenvector within
/// degeneracy_tol of it.
struct GroundSpace {
    double energy = 0.0;
    double degeneracy_tol = 0.0;
    std::vector<std::vector<double>> basis; // real orthonormal vectors

    std::size_t degeneracy() const { return basis.size(); }
};

inline constexpr std::size_t kDenseDimensionLimit = std::size_t{1} << 14;

/// Dense symmetric eigendecomposition via Jacobi rotations in round-robin
/// order; disjoint rotations within a round are applied under OpenMP. The
/// rotation schedule is fixed, so results do not depend on thread count.
/// Matrix is taken by value and consumed. Guarded to n <= 2^14.
EigenDecomposition eigen_decompose_dense(std::vector<double> a, std::size_t n);

/// Classic serial cyclic-by-row Jacobi, kept as the reference the parallel
/// solver is tested and benchmarked against.
EigenDecomposition eigen_decompose_reference(std::vector<double> a, std::size_t n);

/// Eigenvalues only (no vector accumulation), for spectrum series.
std::vector<double> eigenvalues_dense(std::vector<double> a, std::size_t n);

/// Densify and decompose a sparse Hamiltonian.
EigenDecomposition eigen_decompose(const SparseHermitian& h);

/// Sorted eigenvalues of s*H_final + (1-s)*H_driver for each grid point;
/// the grid must be ascending within [0, 1]. No continuity tracking across
/// level crossings; each row is independently sorted.
SpectrumSeries spectrum_series(const AnnealHamiltonian& ah, const std::vector<double>& s_grid);

GroundSpace ground_space(const EigenDecomposition& eig, double degeneracy_tol);
GroundSpace ground_space(const SparseHermitian& h, double degeneracy_tol);

} // namespace qheis
