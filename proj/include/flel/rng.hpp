#pragma once

#include <cstdint>
#include <random>

namespace flel {

// splitmix64; used to derive independent per-cell seeds from a master seed
// so parallel and serial execution see the same streams.
inline std::uint64_t mix_seed(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return mix_seed(mix_seed(mix_seed(master ^ (a * 0xd6e8feb86659fd93ULL)) ^
                             (b * 0xa0761d6478bd642fULL)) ^
                    (c * 0xe7037ed1a0b428dbULL));
}

using Rng = std::mt19937_64;

}  // namespace flel
