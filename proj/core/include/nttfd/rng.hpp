#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nttfd {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a path of labels
/// (campaign row, trial index, ...). Equal paths give equal seeds regardless
/// of which worker asks, which keeps serial and sharded runs identical.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = splitmix64(base);
  for (const std::uint64_t label : path) s = splitmix64(s ^ splitmix64(label));
  return s;
}

// std::mt19937_64 output is fixed by the standard; the distributions are not,
// so bounded draws go through uniform_below instead of std::uniform_int_distribution.
using Engine = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace nttfd
