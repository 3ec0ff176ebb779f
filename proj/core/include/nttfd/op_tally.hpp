#pragma once

#include <cstdint>

namespace nttfd {

/// Arithmetic operations spent by the detection layers (encoder, decoder,
/// checksum). Scalings are multiplications by a fixed coding scalar.
struct OpTally {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t scalings = 0;

  OpTally& operator+=(const OpTally& o) noexcept {
    additions += o.additions;
    multiplications += o.multiplications;
    scalings += o.scalings;
    return *this;
  }

  friend bool operator==(const OpTally&, const OpTally&) = default;
};

/// Per-stage tallies of one protected execution.
struct StageTallies {
  OpTally encoder;
  OpTally decoder;
  OpTally checksum;

  OpTally total() const noexcept {
    OpTally t = encoder;
    t += decoder;
    t += checksum;
    return t;
  }

  friend bool operator==(const StageTallies&, const StageTallies&) = default;
};

}  // namespace nttfd
