#include "qheis/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "qheis/errors.hpp"

namespace qheis {

namespace {

std::size_t bit_mask(int k, int n_spins) {
    return std::size_t{1} << (n_spins - k); // spin 1 = most significant bit
}

int popcount(std::size_t n) { return std::popcount(n); }

/// Sorted (column, value) scratch row, reused across rows during a build.
struct RowScratch {
    std::vector<std::pair<std::size_t, double>> entries;

    void clear() { entries.clear(); }
    void add(std::size_t col, double val) { entries.emplace_back(col, val); }
    void emit(SparseBuilder& b) {
        std::sort(entries.begin(), entries.end());
        for (const auto& [col, val] : entries) b.push(col, val);
        b.finish_row();
    }
};

} // namespace

CouplingGraph::CouplingGraph(int n, std::vector<Bond> bond_list)
    : n_spins(n), bonds(std::move(bond_list)) {
    if (n < 1 || n > SpinBasis::max_spins) {
        throw ConfigError("coupling graph: n_spins out of range: " + std::to_string(n));
    }
    std::set<std::pair<int, int>> seen;
    for (auto& b : bonds) {
        if (b.k > b.m) std::swap(b.k, b.m);
        if (b.k < 1 || b.m > n_spins) {
            throw ConfigError("bond spin " + std::to_string(std::max(b.k, b.m)) +
                              " exceeds n_spins " + std::to_string(n_spins));
        }
        if (b.k == b.m) {
            throw ConfigError("bond couples spin " + std::to_string(b.k) + " to itself");
        }
        if (!seen.insert({b.k, b.m}).second) {
            throw ConfigError("duplicate bond (" + std::to_string(b.k) + ", " +
                              std::to_string(b.m) + ")");
        }
        if (!std::isfinite(b.j) || b.j == 0.0) {
            throw ConfigError("bond (" + std::to_string(b.k) + ", " + std::to_string(b.m) +
                              ") has invalid J");
        }
    }
}

void FieldParams::validate() const {
    if (!(b0 >= 0.0) || !std::isfinite(b0)) throw ConfigError("b0 must be finite and >= 0");
    if (!(b_prime >= 0.0) || !std::isfinite(b_prime)) {
        throw ConfigError("b_prime must be finite and >= 0");
    }
}

SparseHermitian build_exchange_zeeman(const CouplingGraph& graph, double b0) {
    const SpinBasis basis(graph.n_spins);
    SparseBuilder builder(basis.dimension);
    RowScratch row;
    for (std::size_t n = 0; n < basis.dimension; ++n) {
        row.clear();
        const int n_up = popcount(n);
        double diag = b0 * 0.5 * (2 * n_up - graph.n_spins);
        for (const Bond& b : graph.bonds) {
            const std::size_t mk = bit_mask(b.k, graph.n_spins);
            const std::size_t mm = bit_mask(b.m, graph.n_spins);
            const bool equal = ((n & mk) != 0) == ((n & mm) != 0);
            if (equal) {
                diag -= b.j;
            } else {
                diag += b.j;
                row.add(n ^ (mk | mm), -2.0 * b.j); // flip-flop partner
            }
        }
        row.add(n, diag);
        row.emit(builder);
    }
    return builder.take();
}

SparseHermitian build_staggered_driver(int n_spins, double b_prime) {
    const SpinBasis basis(n_spins);
    SparseBuilder builder(basis.dimension);
    RowScratch row;
    for (std::size_t n = 0; n < basis.dimension; ++n) {
        row.clear();
        for (int k = 1; k <= n_spins; ++k) {
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            row.add(n ^ bit_mask(k, n_spins), sign * 0.5 * b_prime);
        }
        row.emit(builder);
    }
    return builder.take();
}

SparseHermitian build_total_spin_squared(int n_spins) {
    const SpinBasis basis(n_spins);
    SparseBuilder builder(basis.dimension);
    RowScratch row;
    for (std::size_t n = 0; n < basis.dimension; ++n) {
        row.clear();
        const double n_up = popcount(n);
        const double n_down = n_spins - n_up;
        const double pairs_equal = 0.5 * (n_up * (n_up - 1) + n_down * (n_down - 1));
        const double pairs_diff = n_up * n_down;
        row.add(n, 0.75 * n_spins + 0.5 * (pairs_equal - pairs_diff));
        for (int k = 1; k <= n_spins; ++k) {
            const std::size_t mk = bit_mask(k, n_spins);
            for (int m = k + 1; m <= n_spins; ++m) {
                const std::size_t mm = bit_mask(m, n_spins);
                if (((n & mk) != 0) != ((n & mm) != 0)) row.add(n ^ (mk | mm), 1.0);
            }
        }
        row.emit(builder);
    }
    return builder.take();
}

StateVector apply(const SparseHermitian& h, const StateVector& v) {
    if (h.dimension != v.dimension()) {
        throw ContractError("apply: matrix dimension " + std::to_string(h.dimension) +
                            " != state dimension " + std::to_string(v.dimension()));
    }
    StateVector out(v.dimension());
    kernels::spmv(h, v.data(), out.data());
    return out;
}

} // namespace qheis
