#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace dtbias {

using Engine = std::mt19937_64;

// Stream tags keep substreams for different purposes disjoint.
inline constexpr std::uint64_t kBootstrapStream = 0xb007;
inline constexpr std::uint64_t kTrialStream = 0x7215;

// Independent substream addressed by (seed, tag, index). Every consumer of
// randomness derives its own stream this way, so parallel and serial runs
// draw identical numbers.
Engine make_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

// Derives a fresh master seed for a nested run (e.g. the bootstrap inside a
// Monte Carlo trial).
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t tag,
                           std::uint64_t index);

// Uniform double in [0, 1) with 53-bit resolution; portable across standard
// library implementations, unlike std::uniform_real_distribution.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n); unbiased via rejection.
std::size_t uniform_index(Engine& rng, std::size_t n);

}  // namespace dtbias
