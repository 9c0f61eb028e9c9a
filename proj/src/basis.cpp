#include "qheis/basis.hpp"

#include "qheis/errors.hpp"

namespace qheis {

SpinBasis::SpinBasis(int n) : n_spins(n) {
    if (n < 1 || n > max_spins) {
        throw ConfigError("n_spins must be in [1, " + std::to_string(max_spins) +
                          "], got " + std::to_string(n));
    }
    dimension = std::size_t{1} << n;
}

std::string SpinConfiguration::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::size_t spins_to_index(const SpinConfiguration& config) {
    std::size_t n = 0;
    for (auto b : config.bits) n = (n << 1) | (b ? 1u : 0u);
    return n;
}

SpinConfiguration index_to_spins(std::size_t n, const SpinBasis& basis) {
    if (n >= basis.dimension) {
        throw RangeError("basis index " + std::to_string(n) + " out of range for N=" +
                         std::to_string(basis.n_spins));
    }
    SpinConfiguration config;
    config.bits.resize(basis.n_spins);
    for (int k = 0; k < basis.n_spins; ++k) {
        config.bits[k] = static_cast<std::uint8_t>((n >> (basis.n_spins - 1 - k)) & 1u);
    }
    return config;
}

} // namespace qheis
