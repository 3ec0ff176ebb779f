#pragma once

#include <array>

#include "nttfd/detect_nwc.hpp"
#include "nttfd/fault.hpp"
#include "nttfd/kyber.hpp"
#include "nttfd/op_tally.hpp"

namespace nttfd {

/// Coding scalars for the Kyber transform plus the two per-slot decoder
/// tables, precomputed once:
///   decode3[k]    = (beta / gamma_k + alpha)^-1
///   correction[k] = 2 * beta / gamma_k
/// where gamma_k = 17^(2*bitrev7(k)+1).
class KyberCodingParams {
 public:
  /// Errors: InvalidCoding if beta/gamma_k + alpha vanishes for some k.
  static KyberCodingParams make(Residue alpha = 1, Residue beta = 1);

  Residue alpha() const noexcept { return alpha_; }
  Residue beta() const noexcept { return beta_; }
  std::span<const Residue, kKyberPairs> decode3() const noexcept { return decode3_; }
  std::span<const Residue, kKyberPairs> correction() const noexcept { return correction_; }

 private:
  Residue alpha_ = 1;
  Residue beta_ = 1;
  std::array<Residue, kKyberPairs> decode3_{};
  std::array<Residue, kKyberPairs> correction_{};
};

/// Even and odd lanes each become alpha*lane + beta*(lane rotated by one pair):
///   out[2i]   = alpha*f[2i]   + beta*f[(2i+2) mod 256]
///   out[2i+1] = alpha*f[2i+1] + beta*f[(2i+3) mod 256]
KyberPoly encode_kyber(const KyberPoly& f, const KyberCodingParams& coding,
                       OpTally* tally = nullptr);

/// Recovers the plain spectrum from the transform of the encoded input:
///   even slot k: (E[2k]   + correction[k]*f0) * decode3[k]
///   odd  slot k: (E[2k+1] + correction[k]*f1) * decode3[k]
/// f0, f1 are the first two coefficients of the original (unencoded) input.
KyberNttVector decode_kyber(const KyberNttVector& encoded, Residue f0, Residue f1,
                            const KyberCodingParams& coding, OpTally* tally = nullptr);

/// flagged <=> sum of all 256 spectrum values != 128*(f0 + f1) mod 3329.
/// check_lhs is the spectrum sum, check_rhs the reference.
DetectionVerdict checksum_kyber(Residue f0, Residue f1, const KyberNttVector& spectrum,
                                OpTally* tally = nullptr);

struct ProtectedKyberResult {
  KyberNttVector spectrum;
  DetectionVerdict verdict;
};

/// Encode, transform (faulted when a plan is given), decode, check.
/// Fault-free, the spectrum equals kyber_ntt(f) exactly.
/// Errors: SiteCountMismatch unless the plan covers exactly 896 butterflies.
ProtectedKyberResult protected_kyber_ntt(const KyberPoly& f, const KyberCodingParams& coding,
                                         const FaultPlan* faults = nullptr,
                                         StageTallies* tally = nullptr);

}  // namespace nttfd
