#pragma once

#include "qheis/sparse.hpp"
#include "qheis/state.hpp"

namespace qheis {

/// Linear ramp over [0, tau]; tau in units of 1/(gamma*hbar*B0).
struct AnnealSchedule {
    double tau = 500.0;

    explicit AnnealSchedule(double total_time);
};

/// Progress s = t/tau; throws RangeError outside [0, tau].
double s_of_t(double t, const AnnealSchedule& schedule);

/// H(s) = s*H_final + (1-s)*H_driver, kept as the two parts; the combined
/// matrix is never materialized.
struct AnnealHamiltonian {
    SparseHermitian h_final;
    SparseHermitian h_driver;
    AnnealSchedule schedule;

    AnnealHamiltonian(SparseHermitian hf, SparseHermitian hd, AnnealSchedule sched);

    std::size_t dimension() const { return h_final.dimension; }
};

/// H(s) v without assembling H(s).
StateVector apply_at(const AnnealHamiltonian& ah, double s, const StateVector& v);

} // namespace qheis
