#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ag/core.hpp"
#include "ag/vmo.hpp"

namespace helpers {

// Deterministic uniform double independent of the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

// Feature values on a wide lattice, so theta = 1 makes within-theta
// equivalent to symbol equality and the oracle reduces to a factor oracle
// over the symbol string.
inline std::vector<double> lattice_frame(int symbol) {
    return {10.0 * symbol};
}

inline ag::Oracle lattice_oracle(const std::vector<int>& symbols, double theta = 1.0) {
    ag::Oracle oracle(theta);
    for (int s : symbols) oracle.add_frame(lattice_frame(s));
    return oracle;
}

inline std::vector<int> random_symbols(Rng& rng, int length, int alphabet) {
    std::vector<int> symbols;
    symbols.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        symbols.push_back(rng.uniform_int(0, alphabet - 1));
    return symbols;
}

// Figure-style sequence used across the oracle tests: a,b,b,c,a,b,c,d,a,b,c
inline std::vector<int> abbc_sequence() {
    return {0, 1, 1, 2, 0, 1, 2, 3, 0, 1, 2};
}

}  // namespace helpers
