#include "qheis/state.hpp"

#include <cmath>
#include <string>

#include "qheis/errors.hpp"

namespace qheis {

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::require_normalized(double tol) const {
    const double n = norm();
    if (std::abs(n - 1.0) > tol) {
        throw ContractError("state vector not normalized: ||C|| = " + std::to_string(n));
    }
}

cplx overlap(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) {
        throw ContractError("overlap: dimension mismatch");
    }
    return kernels::dot(a.dimension(), a.data(), b.data());
}

} // namespace qheis
