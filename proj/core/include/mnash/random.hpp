#pragma once

#include <cstdint>
#include <random>

namespace mnash {

using Rng = std::mt19937_64;

/// Mixes a seed with a stream index so independent tasks get decorrelated generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return Rng(derive_seed(seed, stream));
}

}  // namespace mnash
