#pragma once

#include <vector>

#include "qheis/sparse.hpp"

namespace qheis {

/// Complex amplitudes C_n over the 2^N computational basis.
struct StateVector {
    std::vector<cplx> amplitudes;

    StateVector() = default;
    explicit StateVector(std::size_t dimension) : amplitudes(dimension) {}
    explicit StateVector(std::vector<cplx> amps) : amplitudes(std::move(amps)) {}

    std::size_t dimension() const { return amplitudes.size(); }
    cplx& operator[](std::size_t i) { return amplitudes[i]; }
    const cplx& operator[](std::size_t i) const { return amplitudes[i]; }
    const cplx* data() const { return amplitudes.data(); }
    cplx* data() { return amplitudes.data(); }

    double norm_sq() const { return kernels::norm_sq(amplitudes.size(), amplitudes.data()); }
    double norm() const;

    /// Throws ContractError unless | ||C|| - 1 | <= tol.
    void require_normalized(double tol = 1e-9) const;
};

/// conj(a) . b
cplx overlap(const StateVector& a, const StateVector& b);

} // namespace qheis
