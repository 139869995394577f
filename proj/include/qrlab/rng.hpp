// rng.hpp
// Seed derivation and portable uniform sampling. All randomness in the
// project flows through one master seed split into named streams, so a
// run is reproducible bit-for-bit from a single integer.

#pragma once

#include <cstdint>
#include <random>

namespace qrlab {

// splitmix64 finalizer; bijective 64-bit mix
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream k of a master seed: mix64(mix64(master) ^ mix64(k)).
// This is the seed-splitting rule recorded in run manifests.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(mix64(master) ^ mix64(stream));
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream) {
    return std::mt19937_64(derive_seed(master, stream));
}

// Uniform double in [0,1) from the top 53 bits of one engine output.
// std::uniform_real_distribution is avoided: its output is not pinned by
// the standard, and identical streams across platforms are required here.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& g, double p) { return uniform01(g) < p; }

}  // namespace qrlab
