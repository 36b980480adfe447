#ifndef PSENSE_RNG_HPP
#define PSENSE_RNG_HPP

#include <cstdint>

namespace psense {

// Counter-style generator: deterministic streams from explicit seeds so
// failing sequences replay exactly.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable sub-seed derivation (component index mixed into the base seed).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base ^ (0x632be59bd9b4e019ULL * (index + 1));
    return splitmix64(s);
}

// Uniform double in [0, 1).
inline double uniform01(std::uint64_t& state) {
    return double(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace psense

#endif
