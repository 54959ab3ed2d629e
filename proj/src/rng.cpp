#include "dtbias/rng.hpp"

#include <array>
#include <cstdint>

#include "dtbias/errors.hpp"

namespace dtbias {

namespace {

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  // seed_seq takes 32-bit words; split each 64-bit input into two.
  std::array<std::uint32_t, 6> words = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(tag),  static_cast<std::uint32_t>(tag >> 32),
      static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>(index >> 32)};
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

Engine make_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::seed_seq seq = make_seq(seed, tag, index);
  return Engine(seq);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  Engine eng = make_stream(seed, tag, index);
  return eng();
}

std::size_t uniform_index(Engine& rng, std::size_t n) {
  if (n == 0) {
    throw DomainError("uniform_index needs n >= 1");
  }
  // Rejection sampling for an unbiased draw from {0, ..., n-1}.  The engine
  // emits 2^64 equally likely values; reject the top (2^64 mod n) of them.
  const std::uint64_t m = static_cast<std::uint64_t>(n);
  const std::uint64_t rem = (Engine::max() % m + 1) % m;  // 2^64 mod m
  std::uint64_t draw = rng();
  if (rem != 0) {
    const std::uint64_t limit = std::uint64_t{0} - rem;  // 2^64 - rem
    while (draw >= limit) draw = rng();
  }
  return static_cast<std::size_t>(draw % m);
}

}  // namespace dtbias
