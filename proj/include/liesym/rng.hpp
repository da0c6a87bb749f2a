#ifndef LIESYM_RNG_HPP
#define LIESYM_RNG_HPP

#include <cstdint>
#include <random>

namespace liesym {

/// Deterministic uniform sampler. The mapping from engine output to doubles is
/// pinned here so runs are byte-identical across platforms.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

} // namespace liesym

#endif
