#include "qheis/sparse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>

#include "qheis/errors.hpp"

namespace qheis {

bool SparseHermitian::is_symmetric(double tol) const {
    for (std::size_t i = 0; i < dimension; ++i) {
        for (std::int64_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
            const std::size_t j = cols[e];
            if (std::abs(at(j, i) - vals[e]) > tol) return false;
        }
    }
    return true;
}

double SparseHermitian::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) t += at(i, i);
    return t;
}

double SparseHermitian::max_row_sum() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
        double s = 0.0;
        for (std::int64_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) s += std::abs(vals[e]);
        best = std::max(best, s);
    }
    return best;
}

double SparseHermitian::at(std::size_t i, std::size_t j) const {
    const auto* begin = cols.data() + row_offsets[i];
    const auto* end = cols.data() + row_offsets[i + 1];
    const auto* it = std::lower_bound(begin, end, static_cast<std::uint32_t>(j));
    if (it == end || *it != j) return 0.0;
    return vals[row_offsets[i] + (it - begin)];
}

std::vector<double> SparseHermitian::to_dense() const {
    std::vector<double> a(dimension * dimension, 0.0);
    for (std::size_t i = 0; i < dimension; ++i) {
        for (std::int64_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
            a[i * dimension + cols[e]] = vals[e];
        }
    }
    return a;
}

SparseBuilder::SparseBuilder(std::size_t dimension) {
    m_.dimension = dimension;
    m_.row_offsets.reserve(dimension + 1);
    m_.row_offsets.push_back(0);
}

void SparseBuilder::push(std::size_t col, double value) {
    if (col >= m_.dimension) throw ContractError("sparse builder: column out of range");
    if (static_cast<std::int64_t>(m_.cols.size()) > m_.row_offsets.back() &&
        m_.cols.back() >= col) {
        throw ContractError("sparse builder: columns must be strictly ascending within a row");
    }
    m_.cols.push_back(static_cast<std::uint32_t>(col));
    m_.vals.push_back(value);
}

void SparseBuilder::finish_row() {
    if (rows_done_ == m_.dimension) throw ContractError("sparse builder: too many rows");
    m_.row_offsets.push_back(static_cast<std::int64_t>(m_.cols.size()));
    ++rows_done_;
}

SparseHermitian SparseBuilder::take() {
    if (rows_done_ != m_.dimension) throw ContractError("sparse builder: rows missing");
    return std::move(m_);
}

namespace kernels {

namespace {
std::atomic<std::size_t> g_grain{8192};
constexpr std::size_t kReduceBlock = 4096;

inline cplx row_sum(const SparseHermitian& h, std::size_t i, const cplx* x) {
    cplx acc{0.0, 0.0};
    for (std::int64_t e = h.row_offsets[i]; e < h.row_offsets[i + 1]; ++e) {
        acc += h.vals[e] * x[h.cols[e]];
    }
    return acc;
}
} // namespace

std::size_t parallel_grain() { return g_grain.load(std::memory_order_relaxed); }
void set_parallel_grain(std::size_t grain) { g_grain.store(grain, std::memory_order_relaxed); }

void spmv_serial(const SparseHermitian& h, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < h.dimension; ++i) y[i] = row_sum(h, i, x);
}

void spmv(const SparseHermitian& h, const cplx* x, cplx* y) {
    if (h.dimension < parallel_grain()) {
        spmv_serial(h, x, y);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(h.dimension);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) y[i] = row_sum(h, i, x);
}

void combined_apply_serial(const SparseHermitian& hf, const SparseHermitian& hd, double s,
                           double eref, const cplx* x, cplx* y) {
    const double wd = 1.0 - s;
    for (std::size_t i = 0; i < hf.dimension; ++i) {
        y[i] = s * row_sum(hf, i, x) + wd * row_sum(hd, i, x) - eref * x[i];
    }
}

void combined_apply(const SparseHermitian& hf, const SparseHermitian& hd, double s,
                    double eref, const cplx* x, cplx* y) {
    if (hf.dimension < parallel_grain()) {
        combined_apply_serial(hf, hd, s, eref, x, y);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(hf.dimension);
    const double wd = 1.0 - s;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        y[i] = s * row_sum(hf, i, x) + wd * row_sum(hd, i, x) - eref * x[i];
    }
}

void stage_update_serial(std::size_t n, const cplx* v, const cplx* y, cplx ca, cplx* acc,
                         cplx cu, cplx* u, bool init) {
    if (init) {
        for (std::size_t i = 0; i < n; ++i) {
            acc[i] = ca * y[i];
            u[i] = v[i] + cu * y[i];
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            acc[i] += ca * y[i];
            u[i] = v[i] + cu * y[i];
        }
    }
}

void stage_update(std::size_t n, const cplx* v, const cplx* y, cplx ca, cplx* acc, cplx cu,
                  cplx* u, bool init) {
    if (n < parallel_grain()) {
        stage_update_serial(n, v, y, ca, acc, cu, u, init);
        return;
    }
    const std::int64_t nn = static_cast<std::int64_t>(n);
    if (init) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nn; ++i) {
            acc[i] = ca * y[i];
            u[i] = v[i] + cu * y[i];
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < nn; ++i) {
            acc[i] += ca * y[i];
            u[i] = v[i] + cu * y[i];
        }
    }
}

void axpy_serial(std::size_t n, cplx c, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

void axpy(std::size_t n, cplx c, const cplx* x, cplx* y) {
    if (n < parallel_grain()) {
        axpy_serial(n, c, x, y);
        return;
    }
    const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i) y[i] += c * x[i];
}

double norm_sq_serial(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
    return s;
}

// Block partials are always combined in block order, so the value does not
// depend on thread count (only the partials are computed concurrently).
double norm_sq(std::size_t n, const cplx* x) {
    const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    if (nblocks <= 1) return norm_sq_serial(n, x);
    std::vector<double> partial(nblocks);
    const std::int64_t nb = static_cast<std::int64_t>(nblocks);
    const bool par = n >= parallel_grain();
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
        const std::size_t hi = std::min(lo + kReduceBlock, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(x[i]);
        partial[b] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

cplx dot_serial(std::size_t n, const cplx* a, const cplx* b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

cplx dot(std::size_t n, const cplx* a, const cplx* b) {
    const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    if (nblocks <= 1) return dot_serial(n, a, b);
    std::vector<cplx> partial(nblocks);
    const std::int64_t nb = static_cast<std::int64_t>(nblocks);
    const bool par = n >= parallel_grain();
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t blk = 0; blk < nb; ++blk) {
        const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
        const std::size_t hi = std::min(lo + kReduceBlock, n);
        cplx s{0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) s += std::conj(a[i]) * b[i];
        partial[blk] = s;
    }
    cplx s{0.0, 0.0};
    for (const cplx& p : partial) s += p;
    return s;
}

} // namespace kernels
} // namespace qheis
