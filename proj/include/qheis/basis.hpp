#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qheis {

/// Computational basis of an N-spin chain. Spin 1 is the leftmost spin and maps
/// to the most significant bit of the basis index, so |10> on two spins is |2>.
/// Bit value 0 means the spin points "down", 1 means "up".
struct SpinBasis {
    int n_spins = 0;
    std::size_t dimension = 0;

    explicit SpinBasis(int n);

    static constexpr int max_spins = 24;
};

/// One basis configuration: bits[k-1] holds spin k (1-based, leftmost first).
struct SpinConfiguration {
    std::vector<std::uint8_t> bits;

    int n_spins() const { return static_cast<int>(bits.size()); }
    /// "001100110"-style string, spin 1 first.
    std::string to_string() const;
};

/// Index n = sum_k bits[k] * 2^(N-k).
std::size_t spins_to_index(const SpinConfiguration& config);

/// Inverse of spins_to_index; throws RangeError for n >= dimension.
SpinConfiguration index_to_spins(std::size_t n, const SpinBasis& basis);

} // namespace qheis
