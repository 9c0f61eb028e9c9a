// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qheis/operators.hpp"
#include "qheis/propagator.hpp"
#include "qheis/spectrum.hpp"

using namespace qheis;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

CouplingGraph ring_graph(int n) {
    std::vector<Bond> bonds;
    for (int k = 1; k < n; ++k) bonds.push_back({k, k + 1, (k % 2) ? 5.0 : -5.0});
    bonds.push_back({1, n, 5.0});
    return CouplingGraph(n, std::move(bonds));
}

std::vector<cplx> random_state(std::size_t dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(dim);
    for (auto& a : v) a = cplx(g(rng), g(rng));
    return v;
}

void bench_spmv() {
    std::printf("spmv: alternating ring exchange+Zeeman matrix, complex vector\n");
    std::printf("%8s %12s %12s %8s\n", "dim", "serial[ms]", "openmp[ms]", "speedup");
    for (int n : {10, 12, 14, 16, 18}) {
        const auto h = build_exchange_zeeman(ring_graph(n), 1.0);
        const auto x = random_state(h.dimension, 42);
        std::vector<cplx> y(h.dimension);
        const int reps = n <= 14 ? 50 : 10;
        kernels::set_parallel_grain(~std::size_t{0});
        const double ts = best_of(reps, [&] { kernels::spmv_serial(h, x.data(), y.data()); });
        kernels::set_parallel_grain(1);
        const double tp = best_of(reps, [&] { kernels::spmv(h, x.data(), y.data()); });
        kernels::set_parallel_grain(8192);
        std::printf("%8zu %12.3f %12.3f %8.2f\n", h.dimension, ts * 1e3, tp * 1e3, ts / tp);
    }
}

void bench_evolve() {
    std::printf("\nevolve: 200 RK4 steps of a short anneal (tau=0.2, dt=1e-3)\n");
    std::printf("%8s %12s %12s %8s\n", "dim", "serial[ms]", "openmp[ms]", "speedup");
    for (int n : {9, 12, 14, 16}) {
        AnnealHamiltonian ah(build_exchange_zeeman(ring_graph(n), 1.0),
                             build_staggered_driver(n, 20.0), AnnealSchedule(0.2));
        const StateVector psi0 = prepare_driver_ground(SpinBasis(n));
        IntegratorConfig cfg;
        cfg.n_samples = 2;
        cfg.norm_tol = 1e-3;
        std::vector<std::size_t> track{0};
        const int reps = n <= 12 ? 5 : 2;
        kernels::set_parallel_grain(~std::size_t{0});
        const double ts = best_of(reps, [&] { evolve(ah, psi0, cfg, track); });
        kernels::set_parallel_grain(1);
        const double tp = best_of(reps, [&] { evolve(ah, psi0, cfg, track); });
        kernels::set_parallel_grain(8192);
        std::printf("%8zu %12.3f %12.3f %8.2f\n", ah.dimension(), ts * 1e3, tp * 1e3, ts / tp);
    }
}

void bench_jacobi() {
    std::printf("\neigensolver: cyclic serial reference vs round-robin OpenMP\n");
    std::printf("%8s %12s %12s %8s\n", "dim", "serial[ms]", "openmp[ms]", "speedup");
    for (std::size_t n : {128u, 256u, 512u}) {
        std::mt19937 rng(7);
        std::normal_distribution<double> g;
        std::vector<double> a(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                a[i * n + j] = a[j * n + i] = g(rng);
            }
        }
        const double ts = best_of(2, [&] { eigen_decompose_reference(a, n); });
        kernels::set_parallel_grain(1);
        const double tp = best_of(2, [&] { eigen_decompose_dense(a, n); });
        kernels::set_parallel_grain(8192);
        std::printf("%8zu %12.3f %12.3f %8.2f\n", n, ts * 1e3, tp * 1e3, ts / tp);
    }
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n\n");
#endif
    bench_spmv();
    bench_evolve();
    bench_jacobi();
    return 0;
}
