#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nttfd/fault.hpp"
#include "nttfd/ntt.hpp"
#include "nttfd/op_tally.hpp"
#include "nttfd/zq.hpp"

namespace nttfd {

/// Outcome of one consistency check. flagged <=> check_lhs != check_rhs.
struct DetectionVerdict {
  bool flagged = false;
  Residue check_lhs = 0;
  Residue check_rhs = 0;

  static DetectionVerdict compare(Residue lhs, Residue rhs) noexcept {
    return {lhs != rhs, lhs, rhs};
  }
};

// alpha = beta = 1 vanishes at k = n/2 for every parameter set, since
// omega^(n/2) = -1. (1, 2) is the cheapest pair that never vanishes for
// round1 or the toy set.
inline constexpr Residue kDefaultNwcAlpha = 1;
inline constexpr Residue kDefaultNwcBeta = 2;

/// Shift-combine coding scalars for one parameter set. The encoded input
/// alpha*f + beta*rotate1(f) transforms to NTT(f)[k] * (alpha + beta*omega^-k),
/// so the decoder tables hold the inverses of that factor and of its square.
class CodingParams {
 public:
  /// Errors: InvalidCoding if alpha + beta*omega^-k vanishes for some k.
  static CodingParams make(const NttDomainParams& params, Residue alpha = kDefaultNwcAlpha,
                           Residue beta = kDefaultNwcBeta);

  Residue alpha() const noexcept { return alpha_; }
  Residue beta() const noexcept { return beta_; }
  std::size_t n() const noexcept { return decode1_.size(); }
  Modulus q() const noexcept { return q_; }
  /// (alpha + beta*omega^-k)^-1
  std::span<const Residue> decode1() const noexcept { return decode1_; }
  /// (alpha + beta*omega^-k)^-2
  std::span<const Residue> decode2() const noexcept { return decode2_; }

 private:
  Residue alpha_ = 1;
  Residue beta_ = 1;
  Modulus q_ = 0;
  std::vector<Residue> decode1_;
  std::vector<Residue> decode2_;
};

/// element i = alpha*f[i] + beta*f[(i+1) mod n].
PolyZq encode_shift_combine(const PolyZq& f, const CodingParams& coding, OpTally* tally = nullptr);
/// Same map without decoder tables; any scalars, including vanishing pairs.
PolyZq encode_shift_combine(const PolyZq& f, Residue alpha, Residue beta, OpTally* tally = nullptr);

/// Multiplies frequency k by the stored inverse of (alpha + beta*omega^-k)^power.
/// Errors: OrderingMismatch for bit-reversed input, InvalidArgument for power
/// outside {1, 2}, LengthMismatch.
NttOutput decode_spectrum(const NttOutput& encoded, const CodingParams& coding, int power,
                          OpTally* tally = nullptr);

/// Compares the decoded product's index-0 value with sum(f~) * sum(g~).
DetectionVerdict checksum_nwc(const PolyZq& f_tilde, const PolyZq& g_tilde, Residue h0, Modulus q,
                              OpTally* tally = nullptr);

struct ProtectedNwcResult {
  NttOutput product;  // natural order
  DetectionVerdict verdict;
};

/// Sites touched by protected_nwc_pointwise: the forward transforms of f and
/// g (f's butterflies first) and, optionally, the n pointwise multipliers.
SiteSpace nwc_pointwise_sites(const NttDomainParams& params, bool include_pointwise);

/// Pre-process both inputs, encode, transform (faulted when a plan is given),
/// multiply component-wise, decode with the squared factor and check index 0.
/// Fault-free, the product equals NTT(f~) o NTT(g~) exactly.
/// Errors: MissingPsi, SiteCountMismatch, LengthMismatch.
ProtectedNwcResult protected_nwc_pointwise(const PolyZq& f, const PolyZq& g,
                                           const NttDomainParams& params,
                                           const CodingParams& coding,
                                           const FaultPlan* faults = nullptr,
                                           StageTallies* tally = nullptr);

struct ResoResult {
  PolyZq output;  // first-pass result
  DetectionVerdict verdict;
  // Index of the first disagreeing element; n when none.
  std::size_t first_mismatch = 0;
};

/// Pre-process protected by recomputation with shifted operands. Pass one runs
/// multiplier slot i on f[i]*psi^i; pass two runs slot i on element (i+shift)
/// mod n. After undoing the rotation both passes are compared element-wise.
/// `tally` receives the n extra multiplications of the recomputation pass.
/// Errors: MissingPsi, SiteCountMismatch, InvalidArgument (shift mod n == 0).
ResoResult preprocess_reso_check(const PolyZq& f, const NttDomainParams& params,
                                 const FaultPlan* faults = nullptr, std::size_t shift = 1,
                                 OpTally* tally = nullptr);

}  // namespace nttfd
