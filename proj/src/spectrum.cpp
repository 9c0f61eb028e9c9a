#include "qheis/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

constexpr int kMaxSweeps = 64;

struct Rotation {
    std::size_t p, q;
    double c = 1.0, s = 0.0;
};

double frobenius(const std::vector<double>& a) {
    double f = 0.0;
    for (double x : a) f += x * x;
    return std::sqrt(f);
}

double off_diagonal_sq(const std::vector<double>& a, std::size_t n) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    }
    return 2.0 * off;
}

Rotation make_rotation(const std::vector<double>& a, std::size_t n, std::size_t p,
                       std::size_t q) {
    Rotation r{p, q, 1.0, 0.0};
    const double apq = a[p * n + q];
    if (apq == 0.0) return r;
    const double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

inline void rotate_rows(std::vector<double>& a, std::size_t n, const Rotation& r) {
    double* rp = a.data() + r.p * n;
    double* rq = a.data() + r.q * n;
    for (std::size_t j = 0; j < n; ++j) {
        const double xp = rp[j], xq = rq[j];
        rp[j] = r.c * xp - r.s * xq;
        rq[j] = r.s * xp + r.c * xq;
    }
}

inline void rotate_cols(std::vector<double>& a, std::size_t n, const Rotation& r) {
    for (std::size_t i = 0; i < n; ++i) {
        double* row = a.data() + i * n;
        const double xp = row[r.p], xq = row[r.q];
        row[r.p] = r.c * xp - r.s * xq;
        row[r.q] = r.s * xp + r.c * xq;
    }
}

// A <- J^T A (rows p and q), then A <- A J (columns p and q). Rotations in a
// batch touch pairwise-disjoint indices, so each phase parallelizes cleanly.
void apply_batch(std::vector<double>& a, std::vector<double>* v, std::size_t n,
                 const std::vector<Rotation>& batch) {
    if (n * n < kernels::parallel_grain() || batch.size() == 1) {
        for (const Rotation& r : batch) rotate_rows(a, n, r);
        for (const Rotation& r : batch) rotate_cols(a, n, r);
        if (v != nullptr) {
            for (const Rotation& r : batch) rotate_cols(*v, n, r);
        }
        return;
    }
    const std::int64_t nb = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) rotate_rows(a, n, batch[b]);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) rotate_cols(a, n, batch[b]);
    if (v != nullptr) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < nb; ++b) rotate_cols(*v, n, batch[b]);
    }
}

/// One round-robin pass over all index pairs (n-1 or n rounds of disjoint
/// batches, tournament rotation of seats).
void tournament_sweep(std::vector<double>& a, std::vector<double>* v, std::size_t n) {
    const std::size_t seats = (n % 2 == 0) ? n : n + 1; // odd n gets a bye seat
    std::vector<std::size_t> seat(seats);
    std::iota(seat.begin(), seat.end(), std::size_t{0});
    std::vector<Rotation> batch;
    batch.reserve(seats / 2);
    for (std::size_t round = 0; round + 1 < seats; ++round) {
        batch.clear();
        for (std::size_t i = 0; i < seats / 2; ++i) {
            std::size_t p = seat[i];
            std::size_t q = seat[seats - 1 - i];
            if (p >= n || q >= n) continue; // bye
            if (p > q) std::swap(p, q);
            Rotation r = make_rotation(a, n, p, q);
            if (r.s != 0.0) batch.push_back(r);
        }
        apply_batch(a, v, n, batch);
        // rotate every seat except the first
        const std::size_t last = seat[seats - 1];
        for (std::size_t i = seats - 1; i > 1; --i) seat[i] = seat[i - 1];
        seat[1] = last;
    }
}

void cyclic_sweep(std::vector<double>& a, std::vector<double>* v, std::size_t n) {
    std::vector<Rotation> one(1);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            Rotation r = make_rotation(a, n, p, q);
            if (r.s == 0.0) continue;
            one[0] = r;
            apply_batch(a, v, n, one);
        }
    }
}

EigenDecomposition finish(std::vector<double>& a, std::vector<double>* v, std::size_t n) {
    EigenDecomposition out;
    out.dimension = n;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x] < a[y * n + y];
    });
    out.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a[order[k] * n + order[k]];
    if (v != nullptr) {
        out.eigenvectors.resize(n * n);
        for (std::size_t k = 0; k < n; ++k) {
            double* dst = out.eigenvectors.data() + k * n;
            const std::size_t col = order[k];
            for (std::size_t i = 0; i < n; ++i) dst[i] = (*v)[i * n + col];
            // sign fix: largest-magnitude component positive, ties at lower index
            std::size_t best = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (std::abs(dst[i]) > std::abs(dst[best])) best = i;
            }
            if (dst[best] < 0.0) {
                for (std::size_t i = 0; i < n; ++i) dst[i] = -dst[i];
            }
        }
    }
    return out;
}

template <typename SweepFn>
EigenDecomposition jacobi_run(std::vector<double> a, std::size_t n, bool want_vectors,
                              SweepFn sweep) {
    if (n == 0) throw ContractError("eigendecomposition of empty matrix");
    if (a.size() != n * n) throw ContractError("dense matrix size != n*n");
    if (n > kDenseDimensionLimit) {
        throw CapabilityError("dense eigendecomposition limited to dimension " +
                              std::to_string(kDenseDimensionLimit));
    }
    std::vector<double> v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    const double tol = 1e-12 * std::max(1.0, frobenius(a));
    const double tol_sq = tol * tol;
    for (int s = 0; s < kMaxSweeps; ++s) {
        if (off_diagonal_sq(a, n) <= tol_sq) {
            return finish(a, want_vectors ? &v : nullptr, n);
        }
        sweep(a, want_vectors ? &v : nullptr, n);
    }
    if (off_diagonal_sq(a, n) <= tol_sq) return finish(a, want_vectors ? &v : nullptr, n);
    throw NumericalError("Jacobi eigensolver failed to converge in " +
                         std::to_string(kMaxSweeps) + " sweeps");
}

} // namespace

EigenDecomposition eigen_decompose_dense(std::vector<double> a, std::size_t n) {
    return jacobi_run(std::move(a), n, true, tournament_sweep);
}

EigenDecomposition eigen_decompose_reference(std::vector<double> a, std::size_t n) {
    return jacobi_run(std::move(a), n, true, cyclic_sweep);
}

std::vector<double> eigenvalues_dense(std::vector<double> a, std::size_t n) {
    return jacobi_run(std::move(a), n, false, tournament_sweep).eigenvalues;
}

EigenDecomposition eigen_decompose(const SparseHermitian& h) {
    if (h.dimension > kDenseDimensionLimit) {
        throw CapabilityError("dense eigendecomposition limited to dimension " +
                              std::to_string(kDenseDimensionLimit) + ", got " +
                              std::to_string(h.dimension));
    }
    return eigen_decompose_dense(h.to_dense(), h.dimension);
}

SpectrumSeries spectrum_series(const AnnealHamiltonian& ah, const std::vector<double>& s_grid) {
    if (s_grid.empty()) throw ConfigError("spectrum grid must not be empty");
    for (std::size_t g = 0; g < s_grid.size(); ++g) {
        if (s_grid[g] < 0.0 || s_grid[g] > 1.0) throw RangeError("grid point outside [0, 1]");
        if (g > 0 && s_grid[g] <= s_grid[g - 1]) throw ConfigError("grid must be ascending");
    }
    const std::size_t n = ah.dimension();
    SpectrumSeries series;
    series.s_grid = s_grid;
    series.levels.resize(s_grid.size());
    std::vector<double> dense(n * n);
    for (std::size_t g = 0; g < s_grid.size(); ++g) {
        const double s = s_grid[g];
        std::fill(dense.begin(), dense.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& hf = ah.h_final;
            for (std::int64_t e = hf.row_offsets[i]; e < hf.row_offsets[i + 1]; ++e) {
                dense[i * n + hf.cols[e]] += s * hf.vals[e];
            }
            const auto& hd = ah.h_driver;
            for (std::int64_t e = hd.row_offsets[i]; e < hd.row_offsets[i + 1]; ++e) {
                dense[i * n + hd.cols[e]] += (1.0 - s) * hd.vals[e];
            }
        }
        series.levels[g] = eigenvalues_dense(dense, n);
    }
    return series;
}

GroundSpace ground_space(const EigenDecomposition& eig, double degeneracy_tol) {
    GroundSpace gs;
    gs.degeneracy_tol = degeneracy_tol;
    gs.energy = eig.eigenvalues.front();
    for (std::size_t i = 0; i < eig.dimension; ++i) {
        if (eig.eigenvalues[i] > gs.energy + degeneracy_tol) break;
        auto vec = eig.eigenvector(i);
        gs.basis.emplace_back(vec.begin(), vec.end());
    }
    return gs;
}

GroundSpace ground_space(const SparseHermitian& h, double degeneracy_tol) {
    return ground_space(eigen_decompose(h), degeneracy_tol);
}

} // namespace qheis
