#pragma once

#include <concepts>
#include <cstddef>

#include "nttfd/zq.hpp"

namespace nttfd {

// The three arithmetic results a butterfly produces:
//   P1  t = w * b           (twiddle product)
//   P2  a + t               (sum output)
//   P3  a - t               (difference output)
enum class FaultPosition { P1, P2, P3 };

// A hook sees every butterfly intermediate in execution order and returns the
// value the kernel continues with. Butterfly indices count from zero in the
// loop-nest visit order of the transform.
template <class Hook>
concept ButterflyHook = requires(Hook& h, std::size_t index, FaultPosition pos, Residue v) {
  { h(index, pos, v) } -> std::convertible_to<Residue>;
};

struct NoFaults {
  constexpr Residue operator()(std::size_t, FaultPosition, Residue v) const noexcept { return v; }
};

}  // namespace nttfd
