#pragma once

#include <cstdint>
#include <random>

namespace hiwx {

// SplitMix64 finaliser; spreads nearby integer seeds (seed ^ i) far apart.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// The engine algorithm is fully specified by the standard, so streams are
// reproducible across toolchains; distributions come from Boost.Random
// for the same reason.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(mix_seed(seed)); }

} // namespace hiwx
