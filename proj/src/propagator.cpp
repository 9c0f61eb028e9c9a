#include "qheis/propagator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

constexpr std::size_t kAutoTrackAll = 16;   // dim <= 16: keep every column
constexpr std::size_t kAutoTrackTop = 16;   // larger dims: top-16 by final p
constexpr std::size_t kAutoBufferLimit = std::size_t{1} << 14;

double clamped_progress(double t, double tau) {
    return std::clamp(t / tau, 0.0, 1.0);
}

struct StepBuffers {
    std::vector<cplx> y, acc, u;
    explicit StepBuffers(std::size_t n) : y(n), acc(n), u(n) {}
};

/// v <- RK4(v) over [t, t+h] in the frame H(t) - eref.
void rk4_step_inplace(const AnnealHamiltonian& ah, double t, double h, double eref,
                      std::vector<cplx>& v, StepBuffers& b) {
    const std::size_t n = v.size();
    const double tau = ah.schedule.tau;
    const double s1 = clamped_progress(t, tau);
    const double s2 = clamped_progress(t + 0.5 * h, tau);
    const double s4 = clamped_progress(t + h, tau);
    const cplx mi{0.0, -1.0}; // -i

    kernels::combined_apply(ah.h_final, ah.h_driver, s1, eref, v.data(), b.y.data());
    kernels::stage_update(n, v.data(), b.y.data(), mi, b.acc.data(), mi * (0.5 * h),
                          b.u.data(), true);
    kernels::combined_apply(ah.h_final, ah.h_driver, s2, eref, b.u.data(), b.y.data());
    kernels::stage_update(n, v.data(), b.y.data(), 2.0 * mi, b.acc.data(), mi * (0.5 * h),
                          b.u.data(), false);
    kernels::combined_apply(ah.h_final, ah.h_driver, s2, eref, b.u.data(), b.y.data());
    kernels::stage_update(n, v.data(), b.y.data(), 2.0 * mi, b.acc.data(), mi * h,
                          b.u.data(), false);
    kernels::combined_apply(ah.h_final, ah.h_driver, s4, eref, b.u.data(), b.y.data());
    kernels::axpy(n, h / 6.0, b.acc.data(), v.data());
    kernels::axpy(n, mi * (h / 6.0), b.y.data(), v.data());
}

double mean_energy(const AnnealHamiltonian& ah, double s, const std::vector<cplx>& v,
                   std::vector<cplx>& scratch) {
    kernels::combined_apply(ah.h_final, ah.h_driver, s, 0.0, v.data(), scratch.data());
    const cplx num = kernels::dot(v.size(), v.data(), scratch.data());
    const double den = kernels::norm_sq(v.size(), v.data());
    return num.real() / den;
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(norm_tol > 0.0)) throw ConfigError("norm_tol must be positive");
    if (n_samples < 2) throw ConfigError("n_samples must be at least 2");
}

StateVector prepare_driver_ground(const SpinBasis& basis) {
    StateVector psi(basis.dimension);
    std::size_t odd_mask = 0;
    for (int k = 1; k <= basis.n_spins; k += 2) {
        odd_mask |= std::size_t{1} << (basis.n_spins - k);
    }
    const double mag = std::pow(2.0, -0.5 * basis.n_spins);
    for (std::size_t n = 0; n < basis.dimension; ++n) {
        const bool neg = (std::popcount(n & odd_mask) & 1) != 0;
        psi[n] = cplx(neg ? -mag : mag, 0.0);
    }
    return psi;
}

StateVector rk4_step(const AnnealHamiltonian& ah, const StateVector& state, double t,
                     double dt) {
    const double tau = ah.schedule.tau;
    const double slack = 1e-9 * std::max(1.0, tau);
    if (t < -slack || t + dt > tau + slack) {
        throw RangeError("rk4_step: [t, t+dt] must lie inside [0, tau]");
    }
    if (state.dimension() != ah.dimension()) {
        throw ContractError("rk4_step: state dimension mismatch");
    }
    StateVector out = state;
    StepBuffers buffers(state.dimension());
    rk4_step_inplace(ah, t, dt, 0.0, out.amplitudes, buffers);
    return out;
}

Trajectory evolve(const AnnealHamiltonian& ah, const StateVector& initial,
                  const IntegratorConfig& cfg, std::vector<std::size_t> track) {
    cfg.validate();
    initial.require_normalized(1e-9);
    if (initial.dimension() != ah.dimension()) {
        throw ContractError("evolve: state dimension mismatch");
    }
    const std::size_t dim = ah.dimension();
    for (std::size_t idx : track) {
        if (idx >= dim) throw ConfigError("tracked index " + std::to_string(idx) +
                                          " out of range");
    }

    const bool track_explicit = !track.empty();
    const bool track_all = !track_explicit && dim <= kAutoTrackAll;
    const bool buffer_full = !track_explicit && !track_all;
    if (buffer_full && dim > kAutoBufferLimit) {
        throw CapabilityError("auto-tracking buffers full probability rows only up to "
                              "dimension 2^14; pass an explicit track list");
    }
    if (track_all) {
        track.resize(dim);
        std::iota(track.begin(), track.end(), std::size_t{0});
    }

    const double tau = ah.schedule.tau;
    const std::size_t n_samples = cfg.n_samples;
    Trajectory traj;
    traj.times.resize(n_samples);
    traj.norms.resize(n_samples);
    traj.probabilities.reserve(n_samples);
    std::vector<std::vector<double>> full_rows; // only in buffer_full mode
    if (buffer_full) full_rows.reserve(n_samples);

    std::vector<cplx> v = initial.amplitudes;
    StepBuffers buffers(dim);
    std::vector<cplx> scratch(dim);

    auto record = [&](std::size_t j, double t) {
        traj.times[j] = t;
        const double nrm = std::sqrt(kernels::norm_sq(dim, v.data()));
        traj.norms[j] = nrm;
        const double drift = std::abs(nrm - 1.0);
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (drift > cfg.norm_tol) {
            throw NumericalError("norm drift " + std::to_string(drift) + " exceeds tolerance " +
                                 std::to_string(cfg.norm_tol) + " at t = " + std::to_string(t));
        }
        if (buffer_full) {
            std::vector<double> row(dim);
            for (std::size_t i = 0; i < dim; ++i) row[i] = std::norm(v[i]);
            full_rows.push_back(std::move(row));
        } else {
            std::vector<double> row(track.size());
            for (std::size_t i = 0; i < track.size(); ++i) row[i] = std::norm(v[track[i]]);
            traj.probabilities.push_back(std::move(row));
        }
        if (cfg.snapshot_full) traj.snapshots.emplace_back(std::vector<cplx>(v));
        if (cfg.renormalize_at_samples && nrm > 0.0) {
            const double inv = 1.0 / nrm;
            for (auto& a : v) a *= inv;
        }
    };

    record(0, 0.0);
    double eref = 0.0;
    for (std::size_t j = 0; j + 1 < n_samples; ++j) {
        const double t0 = tau * static_cast<double>(j) / static_cast<double>(n_samples - 1);
        const double t1 = tau * static_cast<double>(j + 1) / static_cast<double>(n_samples - 1);
        const auto n_steps =
            std::max<std::int64_t>(1, std::llround((t1 - t0) / cfg.dt));
        const double h = (t1 - t0) / static_cast<double>(n_steps);
        if (cfg.energy_shift) {
            eref = mean_energy(ah, clamped_progress(t0, tau), v, scratch);
        }
        for (std::int64_t i = 0; i < n_steps; ++i) {
            rk4_step_inplace(ah, t0 + static_cast<double>(i) * h, h, eref, v, buffers);
        }
        record(j + 1, t1);
    }

    traj.final_state = StateVector(std::move(v));

    if (buffer_full) {
        // Post-pass: keep the columns with the largest final probability.
        const auto& final_row = full_rows.back();
        std::vector<std::size_t> order(dim);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return final_row[a] > final_row[b];
        });
        order.resize(std::min<std::size_t>(kAutoTrackTop, dim));
        std::sort(order.begin(), order.end());
        track = std::move(order);
        for (const auto& row : full_rows) {
            std::vector<double> kept(track.size());
            for (std::size_t i = 0; i < track.size(); ++i) kept[i] = row[track[i]];
            traj.probabilities.push_back(std::move(kept));
        }
    }
    traj.tracked = std::move(track);
    return traj;
}

} // namespace qheis
