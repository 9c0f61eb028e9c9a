#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qheis {

using cplx = std::complex<double>;

/// Real-symmetric sparse matrix in compressed row form. Every Hamiltonian in
/// this code is real in the computational basis, so values are plain doubles;
/// complex phases only appear in the state vector.
struct SparseHermitian {
    std::size_t dimension = 0;
    std::vector<std::int64_t> row_offsets; // dimension + 1 entries
    std::vector<std::uint32_t> cols;       // sorted within each row
    std::vector<double> vals;

    std::size_t nnz() const { return vals.size(); }

    /// Full scan for (i, j, v) <=> (j, i, v). Quadratic in nnz per row, meant
    /// for tests and build-time checks, not hot paths.
    bool is_symmetric(double tol = 0.0) const;

    double trace() const;

    /// max_i sum_j |a_ij| (infinity norm); used to scale residual tolerances.
    double max_row_sum() const;

    /// Entry lookup by binary search; zero when absent.
    double at(std::size_t i, std::size_t j) const;

    /// Row-major dense copy (n*n doubles).
    std::vector<double> to_dense() const;
};

/// Incremental CSR builder; rows must be appended in order, entries within a
/// row in ascending column order.
class SparseBuilder {
public:
    explicit SparseBuilder(std::size_t dimension);
    void push(std::size_t col, double value); // into the current row
    void finish_row();
    SparseHermitian take();

private:
    SparseHermitian m_;
    std::size_t rows_done_ = 0;
};

namespace kernels {

/// Loops at or above this many elements run under OpenMP; smaller ones stay
/// serial where fork/join overhead would dominate. Tests and benchmarks may
/// move it to force either path.
std::size_t parallel_grain();
void set_parallel_grain(std::size_t grain);

/// y = H x
void spmv(const SparseHermitian& h, const cplx* x, cplx* y);
void spmv_serial(const SparseHermitian& h, const cplx* x, cplx* y);

/// y = s*(hf x) + (1-s)*(hd x) - eref*x, one fused pass over both row sets.
void combined_apply(const SparseHermitian& hf, const SparseHermitian& hd, double s,
                    double eref, const cplx* x, cplx* y);
void combined_apply_serial(const SparseHermitian& hf, const SparseHermitian& hd, double s,
                           double eref, const cplx* x, cplx* y);

/// acc[i] (+)= ca*y[i]; u[i] = v[i] + cu*y[i]. Overwrites acc when init is
/// true. The Runge-Kutta stage bookkeeping collapses onto this one loop.
void stage_update(std::size_t n, const cplx* v, const cplx* y, cplx ca, cplx* acc, cplx cu,
                  cplx* u, bool init);
void stage_update_serial(std::size_t n, const cplx* v, const cplx* y, cplx ca, cplx* acc,
                         cplx cu, cplx* u, bool init);

/// y += c x
void axpy(std::size_t n, cplx c, const cplx* x, cplx* y);
void axpy_serial(std::size_t n, cplx c, const cplx* x, cplx* y);

/// sum |x_i|^2 via fixed-size blocks combined in block order, so the result
/// is identical no matter how many threads ran.
double norm_sq(std::size_t n, const cplx* x);
double norm_sq_serial(std::size_t n, const cplx* x);

/// conj(a) . b, same deterministic blocked reduction.
cplx dot(std::size_t n, const cplx* a, const cplx* b);
cplx dot_serial(std::size_t n, const cplx* a, const cplx* b);

} // namespace kernels
} // namespace qheis
