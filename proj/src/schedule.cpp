#include "qheis/schedule.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qheis/errors.hpp"

namespace qheis {

AnnealSchedule::AnnealSchedule(double total_time) : tau(total_time) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError("anneal time tau must be positive and finite");
    }
}

double s_of_t(double t, const AnnealSchedule& schedule) {
    if (t < 0.0 || t > schedule.tau) {
        throw RangeError("t = " + std::to_string(t) + " outside [0, " +
                         std::to_string(schedule.tau) + "]");
    }
    return t / schedule.tau;
}

AnnealHamiltonian::AnnealHamiltonian(SparseHermitian hf, SparseHermitian hd,
                                     AnnealSchedule sched)
    : h_final(std::move(hf)), h_driver(std::move(hd)), schedule(sched) {
    if (h_final.dimension != h_driver.dimension) {
        throw ContractError("anneal Hamiltonian: driver and final dimensions differ");
    }
}

StateVector apply_at(const AnnealHamiltonian& ah, double s, const StateVector& v) {
    if (s < 0.0 || s > 1.0) throw RangeError("progress s outside [0, 1]");
    if (v.dimension() != ah.dimension()) {
        throw ContractError("apply_at: state dimension mismatch");
    }
    StateVector out(v.dimension());
    kernels::combined_apply(ah.h_final, ah.h_driver, s, 0.0, v.data(), out.data());
    return out;
}

} // namespace qheis
