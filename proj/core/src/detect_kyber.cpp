#include "nttfd/detect_kyber.hpp"

#include <string>

namespace nttfd {
namespace {

constexpr Modulus q = kKyberQ;

void tally(OpTally* t, std::uint64_t adds, std::uint64_t mults, std::uint64_t scalings) {
  if (t == nullptr) return;
  t->additions += adds;
  t->multiplications += mults;
  t->scalings += scalings;
}

}  // namespace

KyberCodingParams KyberCodingParams::make(Residue alpha, Residue beta) {
  if (alpha >= q || beta >= q) {
    throw Error(ErrorCode::InvalidCoding, "coding scalars must be reduced mod 3329");
  }
  KyberCodingParams c;
  c.alpha_ = alpha;
  c.beta_ = beta;
  const auto gammas = kyber_gammas();
  for (std::size_t k = 0; k < kKyberPairs; ++k) {
    const Residue beta_over_gamma = mod_mul(beta, mod_inv(gammas[k], q), q);
    const Residue factor = mod_add(beta_over_gamma, alpha, q);
    if (factor == 0) {
      throw Error(ErrorCode::InvalidCoding, "beta/gamma_" + std::to_string(k) +
                                                " + alpha vanishes for alpha=" +
                                                std::to_string(alpha) + ", beta=" +
                                                std::to_string(beta));
    }
    c.decode3_[k] = mod_inv(factor, q);
    c.correction_[k] = mod_add(beta_over_gamma, beta_over_gamma, q);
  }
  return c;
}

KyberPoly encode_kyber(const KyberPoly& f, const KyberCodingParams& coding, OpTally* t) {
  const bool scale_alpha = coding.alpha() != 1;
  KyberPoly out;
  for (std::size_t i = 0; i < kKyberN; ++i) {
    const Residue a = scale_alpha ? mod_mul(coding.alpha(), f.coeffs[i], q) : f.coeffs[i];
    out.coeffs[i] = mod_add(a, mod_mul(coding.beta(), f.coeffs[(i + 2) % kKyberN], q), q);
  }
  tally(t, kKyberN, 0, scale_alpha ? 2 * kKyberN : kKyberN);
  return out;
}

KyberNttVector decode_kyber(const KyberNttVector& encoded, Residue f0, Residue f1,
                            const KyberCodingParams& coding, OpTally* t) {
  const auto d3 = coding.decode3();
  const auto corr = coding.correction();
  KyberNttVector out;
  for (std::size_t k = 0; k < kKyberPairs; ++k) {
    out.coeffs[2 * k] =
        mod_mul(mod_add(encoded.coeffs[2 * k], mod_mul(corr[k], f0, q), q), d3[k], q);
    out.coeffs[2 * k + 1] =
        mod_mul(mod_add(encoded.coeffs[2 * k + 1], mod_mul(corr[k], f1, q), q), d3[k], q);
  }
  tally(t, kKyberN, 2 * kKyberN, 0);
  return out;
}

DetectionVerdict checksum_kyber(Residue f0, Residue f1, const KyberNttVector& spectrum,
                                OpTally* t) {
  Residue sum = spectrum.coeffs[0];
  for (std::size_t j = 1; j < kKyberN; ++j) sum = mod_add(sum, spectrum.coeffs[j], q);
  const Residue reference = mod_mul(128, mod_add(f0, f1, q), q);
  // n-1 additions over the spectrum, one addition and one scaling for the reference.
  tally(t, kKyberN, 0, 1);
  return DetectionVerdict::compare(sum, reference);
}

ProtectedKyberResult protected_kyber_ntt(const KyberPoly& f, const KyberCodingParams& coding,
                                         const FaultPlan* faults, StageTallies* tallies) {
  const Residue f0 = f.coeffs[0];
  const Residue f1 = f.coeffs[1];
  KyberPoly encoded = encode_kyber(f, coding, tallies ? &tallies->encoder : nullptr);

  if (faults != nullptr) {
    if (faults->sites != SiteSpace{kKyberButterflies, 0, 0}) {
      throw Error(ErrorCode::SiteCountMismatch,
                  "plan covers " + std::to_string(faults->total_sites()) +
                      " sites, the Kyber transform has 896 butterflies");
    }
    FaultInjector injector(*faults, q);
    auto hook = injector.butterfly_view(0);
    kyber_ntt_kernel(std::span<Residue, kKyberN>(encoded.coeffs), hook);
  } else {
    NoFaults hook;
    kyber_ntt_kernel(std::span<Residue, kKyberN>(encoded.coeffs), hook);
  }

  KyberNttVector spectrum = decode_kyber(KyberNttVector{encoded.coeffs}, f0, f1, coding,
                                         tallies ? &tallies->decoder : nullptr);
  const DetectionVerdict verdict =
      checksum_kyber(f0, f1, spectrum, tallies ? &tallies->checksum : nullptr);
  return {spectrum, verdict};
}

}  // namespace nttfd
