#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qheis/analysis.hpp"
#include "qheis/errors.hpp"

using namespace qheis;
using doctest::Approx;

namespace {

StateVector eq3_like_state() {
    // the four-amplitude (-1/2, -1/2, 1/2, 1/2) ray
    StateVector v(4);
    v[0] = -0.5;
    v[1] = -0.5;
    v[2] = 0.5;
    v[3] = 0.5;
    return v;
}

StateVector unit_on(std::size_t dim, std::size_t n) {
    StateVector v(dim);
    v[n] = 1.0;
    return v;
}

} // namespace

TEST_CASE("probabilities are the squared moduli") {
    const auto p = probabilities(unit_on(8, 0));
    CHECK(p[0] == 1.0);
    for (std::size_t i = 1; i < 8; ++i) CHECK(p[i] == 0.0);

    const auto q = probabilities(eq3_like_state());
    for (double x : q) CHECK(x == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("global phase fixing") {
    SUBCASE("pure imaginary becomes real positive") {
        StateVector v(2);
        v[0] = cplx(0.0, 1.0);
        const StateVector fixed = fix_global_phase(v);
        CHECK(fixed[0].real() == Approx(1.0).epsilon(1e-14));
        CHECK(fixed[0].imag() == 0.0);
    }
    SUBCASE("the leading amplitude turns positive, probabilities unchanged") {
        const StateVector fixed = fix_global_phase(eq3_like_state());
        CHECK(fixed[0].real() == Approx(0.5).epsilon(1e-14));
        CHECK(fixed[1].real() == Approx(0.5).epsilon(1e-14));
        CHECK(fixed[2].real() == Approx(-0.5).epsilon(1e-14));
        CHECK(fixed[3].real() == Approx(-0.5).epsilon(1e-14));
        const auto before = probabilities(eq3_like_state());
        const auto after = probabilities(fixed);
        for (std::size_t i = 0; i < 4; ++i) CHECK(before[i] == Approx(after[i]).epsilon(1e-14));
    }
    SUBCASE("near-tied maxima pivot on the lowest index") {
        StateVector v(4);
        v[1] = cplx(0.0, 0.70710678); // |C_1| microscopically below |C_2|
        v[2] = cplx(0.0, -0.70710679);
        const StateVector fixed = fix_global_phase(v);
        CHECK(fixed[1].real() > 0.0);
        CHECK(fixed[2].real() < 0.0);
    }
    SUBCASE("zero vector is rejected") {
        CHECK_THROWS_AS(fix_global_phase(StateVector(4)), ContractError);
    }
}

TEST_CASE("dominant state extraction") {
    SUBCASE("single point mass") {
        const auto doms = dominant_states(unit_on(8, 5), 0.5);
        REQUIRE(doms.size() == 1);
        CHECK(doms[0].index == 5);
        CHECK(doms[0].probability == Approx(1.0));
        CHECK(doms[0].pattern.to_string() == "101");
    }
    SUBCASE("sorted by probability, amplitudes phase-fixed") {
        StateVector v(4);
        v[0] = cplx(0.0, 0.8);
        v[1] = cplx(0.0, -0.6);
        const auto doms = dominant_states(v, 0.1);
        REQUIRE(doms.size() == 2);
        CHECK(doms[0].index == 0);
        CHECK(doms[0].amplitude.real() == Approx(0.8).epsilon(1e-12));
        CHECK(doms[1].amplitude.real() == Approx(-0.6).epsilon(1e-12));
    }
    SUBCASE("lowering the threshold only adds entries") {
        StateVector v(8);
        v[0] = std::sqrt(0.5);
        v[3] = std::sqrt(0.3);
        v[6] = std::sqrt(0.2);
        auto high = dominant_states(v, 0.25);
        auto low = dominant_states(v, 0.1);
        CHECK(high.size() == 2);
        CHECK(low.size() == 3);
        for (std::size_t i = 0; i < high.size(); ++i) CHECK(low[i].index == high[i].index);
        double sum = 0.0;
        for (const auto& d : low) sum += d.probability;
        CHECK(sum <= 1.0 + 1e-12);
    }
    SUBCASE("threshold bounds") {
        CHECK_THROWS_AS(dominant_states(unit_on(2, 0), 0.0), ContractError);
        CHECK_THROWS_AS(dominant_states(unit_on(2, 0), 1.0), ContractError);
    }
}

TEST_CASE("relative phase") {
    StateVector v(4);
    v[1] = 1.0 / std::sqrt(2.0);
    v[2] = -1.0 / std::sqrt(2.0);
    CHECK(relative_phase(v, 1, 2) == Approx(std::numbers::pi));

    SUBCASE("wrapping lands in (-pi, pi]") {
        StateVector w(4);
        w[0] = std::polar(0.7, 3.0);
        w[1] = std::polar(0.7, -3.0);
        const double d = relative_phase(w, 0, 1);
        CHECK(d == Approx(2.0 * std::numbers::pi - 6.0).epsilon(1e-12));
        CHECK(d > -std::numbers::pi);
        CHECK(d <= std::numbers::pi);
    }
    SUBCASE("undefined below the cutoff") {
        StateVector w(4);
        w[0] = 1.0;
        w[1] = 1e-7;
        CHECK_THROWS_AS(relative_phase(w, 0, 1), UndefinedPhaseError);
    }
    SUBCASE("index range") {
        CHECK_THROWS_AS(relative_phase(v, 0, 9), RangeError);
    }
    SUBCASE("invariant under phase fixing") {
        StateVector w(4);
        w[1] = std::polar(std::sqrt(0.5), 0.4);
        w[2] = std::polar(std::sqrt(0.5), 2.1);
        const double before = relative_phase(w, 1, 2);
        const double after = relative_phase(fix_global_phase(w), 1, 2);
        CHECK(before == Approx(after).epsilon(1e-12));
    }
}

TEST_CASE("fidelity to a subspace") {
    GroundSpace gs;
    gs.energy = -1.0;
    gs.basis = {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};

    CHECK(fidelity_to_subspace(unit_on(4, 0), gs) == Approx(1.0));
    CHECK(fidelity_to_subspace(unit_on(4, 3), gs) == Approx(0.0));

    SUBCASE("invariant under a rotation of the subspace basis") {
        StateVector v(4);
        v[0] = std::polar(0.6, 0.3);
        v[1] = std::polar(std::sqrt(1.0 - 0.36), -1.2);
        const double f = fidelity_to_subspace(v, gs);
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> adist(0.0, 2.0 * std::numbers::pi);
        for (int trial = 0; trial < 10; ++trial) {
            const double a = adist(rng);
            GroundSpace rotated = gs;
            rotated.basis[0] = {std::cos(a), std::sin(a), 0.0, 0.0};
            rotated.basis[1] = {-std::sin(a), std::cos(a), 0.0, 0.0};
            CHECK(fidelity_to_subspace(v, rotated) == Approx(f).epsilon(1e-12));
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(fidelity_to_subspace(StateVector(8), gs), ContractError);
    }
}

TEST_CASE("total spin expectations") {
    const auto s2_nine = build_total_spin_squared(9);
    const auto e = total_spin_expectations(unit_on(512, 0), s2_nine, 9);
    CHECK(e.s_squared == Approx(24.75).epsilon(1e-12));
    CHECK(e.s_z == Approx(-4.5).epsilon(1e-12));

    const auto s2_two = build_total_spin_squared(2);
    StateVector singlet(4);
    singlet[1] = 1.0 / std::sqrt(2.0);
    singlet[2] = -1.0 / std::sqrt(2.0);
    const auto es = total_spin_expectations(singlet, s2_two, 2);
    CHECK(es.s_squared == Approx(0.0).epsilon(1e-12));
    CHECK(es.s_z == Approx(0.0).epsilon(1e-12));

    const auto eq3 = total_spin_expectations(eq3_like_state(), s2_two, 2);
    CHECK(eq3.s_z == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frustration parity") {
    const std::vector<Bond> triangle{{1, 2, 5.0}, {2, 3, -5.0}, {1, 3, 5.0}};
    const auto fr = frustration_parity(triangle);
    CHECK(fr.negative_count == 1);
    CHECK(fr.frustrated);

    std::vector<Bond> ring;
    for (int k = 1; k < 9; ++k) ring.push_back({k, k + 1, (k % 2) ? 5.0 : -5.0});
    ring.push_back({9, 1, 5.0});
    const auto alt = frustration_parity(ring);
    CHECK(alt.negative_count == 4);
    CHECK_FALSE(alt.frustrated);

    std::vector<Bond> positive = ring;
    for (auto& b : positive) b.j = std::abs(b.j);
    CHECK_FALSE(frustration_parity(positive).frustrated);

    SUBCASE("invariant under positive rescaling") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> cdist(1e-6, 1e6);
        for (int trial = 0; trial < 25; ++trial) {
            const double c = cdist(rng);
            std::vector<Bond> scaled = ring;
            for (auto& b : scaled) b.j *= c;
            CHECK(frustration_parity(scaled).frustrated == alt.frustrated);
            CHECK(frustration_parity(scaled).negative_count == alt.negative_count);
        }
    }
    SUBCASE("global sign flip changes parity only for odd cycles") {
        std::vector<Bond> flipped = ring; // 9 bonds: 4 -> 5 negatives
        for (auto& b : flipped) b.j = -b.j;
        CHECK(frustration_parity(flipped).negative_count == 5);
        CHECK(frustration_parity(flipped).frustrated);
    }
    SUBCASE("broken chains are rejected") {
        CHECK_THROWS_AS(frustration_parity({{1, 2, 5.0}, {2, 3, 5.0}, {4, 5, 5.0}}),
                        ConfigError);
        CHECK_THROWS_AS(frustration_parity({{1, 2, 5.0}, {2, 3, 5.0}}), ConfigError);
        // open path: the closing pair (3,4) / (1,2) shares no spin
        CHECK_THROWS_AS(frustration_parity({{1, 2, 5.0}, {2, 3, 5.0}, {3, 4, 5.0}}),
                        ConfigError);
        // revisited spin
        CHECK_THROWS_AS(frustration_parity(
                            {{1, 2, 5.0}, {2, 3, 5.0}, {3, 4, 5.0}, {4, 2, 5.0}}),
                        ConfigError);
    }
}
