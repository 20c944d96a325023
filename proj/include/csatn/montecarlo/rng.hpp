// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace csatn {

/// One step of the SplitMix64 output function.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of run `index` under `master_seed`. Depends only on the pair, so a
/// run draws the same numbers whichever worker executes it.
inline constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

using RunRng = std::mt19937_64;

inline RunRng make_run_rng(std::uint64_t master_seed, std::uint64_t index)
{
    return RunRng(stream_seed(master_seed, index));
}

} // namespace csatn
