#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace polybend {

using Rng = std::mt19937_64;

// Per-item generator for the stream (seed, index); independent of scheduling.
inline Rng item_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

// The standard distributions are implementation-defined; these are not, so
// outputs stay byte-identical across standard libraries.
template <class G>
double uniform01(G& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class G>
double uniform(G& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

template <class G>
double gaussian(G& rng) {
    double a;
    do {
        a = uniform01(rng);
    } while (a <= 0);
    const double b = uniform01(rng);
    return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * M_PI * b);
}

}  // namespace polybend
