// Parallel kernels against their serial references.
#include <doctest.h>

#include <random>

#include "qheis/operators.hpp"
#include "qheis/sparse.hpp"

using namespace qheis;

namespace {

struct GrainGuard {
    std::size_t saved = kernels::parallel_grain();
    ~GrainGuard() { kernels::set_parallel_grain(saved); }
};

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto& a : v) a = cplx(g(rng), g(rng));
    return v;
}

SparseHermitian test_matrix(int n_spins) {
    std::vector<Bond> bonds;
    for (int k = 1; k < n_spins; ++k) bonds.push_back({k, k + 1, (k % 2) ? 4.0 : -3.0});
    bonds.push_back({1, n_spins, 2.0});
    return build_exchange_zeeman(CouplingGraph(n_spins, bonds), 1.0);
}

} // namespace

TEST_CASE("spmv: forced-parallel result is bit-identical to the serial reference") {
    GrainGuard guard;
    const auto h = test_matrix(11); // dim 2048
    const auto x = random_vec(h.dimension, 21);
    std::vector<cplx> ys(h.dimension), yp(h.dimension);
    kernels::spmv_serial(h, x.data(), ys.data());
    kernels::set_parallel_grain(1);
    kernels::spmv(h, x.data(), yp.data());
    CHECK(ys == yp);
}

TEST_CASE("combined_apply: parallel vs serial, several schedule points") {
    GrainGuard guard;
    const auto hf = test_matrix(10);
    const auto hd = build_staggered_driver(10, 20.0);
    const auto x = random_vec(hf.dimension, 33);
    std::vector<cplx> ys(hf.dimension), yp(hf.dimension);
    for (double s : {0.0, 0.3, 1.0}) {
        kernels::combined_apply_serial(hf, hd, s, -7.5, x.data(), ys.data());
        kernels::set_parallel_grain(1);
        kernels::combined_apply(hf, hd, s, -7.5, x.data(), yp.data());
        kernels::set_parallel_grain(~std::size_t{0});
        CHECK(ys == yp);
    }
}

TEST_CASE("stage_update and axpy: parallel vs serial") {
    GrainGuard guard;
    const std::size_t n = 5000;
    const auto v = random_vec(n, 1);
    const auto y = random_vec(n, 2);
    const cplx ca{0.0, -2.0}, cu{0.0, -0.0005};

    auto acc_s = random_vec(n, 3);
    auto acc_p = acc_s;
    std::vector<cplx> us(n), up(n);
    kernels::stage_update_serial(n, v.data(), y.data(), ca, acc_s.data(), cu, us.data(), false);
    kernels::set_parallel_grain(1);
    kernels::stage_update(n, v.data(), y.data(), ca, acc_p.data(), cu, up.data(), false);
    CHECK(acc_s == acc_p);
    CHECK(us == up);

    kernels::stage_update_serial(n, v.data(), y.data(), ca, acc_s.data(), cu, us.data(), true);
    kernels::stage_update(n, v.data(), y.data(), ca, acc_p.data(), cu, up.data(), true);
    CHECK(acc_s == acc_p);

    auto ts = random_vec(n, 4);
    auto tp = ts;
    kernels::set_parallel_grain(~std::size_t{0});
    kernels::axpy_serial(n, ca, y.data(), ts.data());
    kernels::set_parallel_grain(1);
    kernels::axpy(n, ca, y.data(), tp.data());
    CHECK(ts == tp);
}

TEST_CASE("blocked reductions do not depend on the threading path") {
    GrainGuard guard;
    const std::size_t n = 50000; // spans many reduction blocks
    const auto a = random_vec(n, 55);
    const auto b = random_vec(n, 56);

    kernels::set_parallel_grain(~std::size_t{0});
    const double ns = kernels::norm_sq(n, a.data());
    const cplx ds = kernels::dot(n, a.data(), b.data());
    kernels::set_parallel_grain(1);
    const double np = kernels::norm_sq(n, a.data());
    const cplx dp = kernels::dot(n, a.data(), b.data());

    CHECK(ns == np); // identical block combination order
    CHECK(ds == dp);

    // and both agree with the naive serial sum to rounding
    CHECK(kernels::norm_sq_serial(n, a.data()) == doctest::Approx(ns).epsilon(1e-13));
    const cplx dn = kernels::dot_serial(n, a.data(), b.data());
    CHECK(std::abs(dn - ds) <= 1e-10);
}

TEST_CASE("sparse accessors: symmetry scan, trace, row sums") {
    const auto h = test_matrix(6);
    CHECK(h.is_symmetric());
    CHECK(h.max_row_sum() > 0.0);
    const auto dense = h.to_dense();
    double tr = 0.0;
    for (std::size_t i = 0; i < h.dimension; ++i) tr += dense[i * h.dimension + i];
    CHECK(h.trace() == doctest::Approx(tr).epsilon(1e-14));
}
