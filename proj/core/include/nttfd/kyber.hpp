#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "nttfd/butterfly.hpp"
#include "nttfd/zq.hpp"

namespace nttfd {

inline constexpr std::size_t kKyberN = 256;
inline constexpr Modulus kKyberQ = 3329;
inline constexpr Residue kKyberOmega = 17;
inline constexpr std::size_t kKyberPairs = 128;
// Seven layers of 128 butterflies.
inline constexpr std::size_t kKyberButterflies = 896;

using KyberCoeffs = std::array<Residue, kKyberN>;

/// 256 coefficients mod 3329.
struct KyberPoly {
  KyberCoeffs coeffs{};

  /// Throws InvalidResidue / LengthMismatch on bad input.
  static KyberPoly from(std::span<const Residue> values);
  PolyZq to_poly() const;

  friend bool operator==(const KyberPoly&, const KyberPoly&) = default;
};

/// 128 degree-one residues stored flat: slots (2i, 2i+1) hold f mod (X^2 - gamma_i)
/// with gamma_i = 17^(2*bitrev7(i)+1). This is the layout the in-place transform
/// produces, so no re-sorting happens anywhere.
struct KyberNttVector {
  KyberCoeffs coeffs{};

  static KyberNttVector from(std::span<const Residue> values);

  friend bool operator==(const KyberNttVector&, const KyberNttVector&) = default;
};

/// zetas[k] = 17^bitrev7(k); index 0 is unused by the transform.
std::span<const Residue, kKyberPairs> kyber_zetas() noexcept;
/// gammas[i] = 17^(2*bitrev7(i)+1), the modulus constant of quadratic factor i.
std::span<const Residue, kKyberPairs> kyber_gammas() noexcept;

/// In-place incomplete transform. Layer length s runs 128, 64, ..., 2; each block
/// takes the next zeta starting from zetas[1]. Butterfly: t = zeta*r[j+s],
/// r[j+s] = r[j] - t, r[j] = r[j] + t.
template <ButterflyHook Hook>
void kyber_ntt_kernel(std::span<Residue, kKyberN> r, Hook& hook) {
  const auto zetas = kyber_zetas();
  std::size_t k = 1;
  std::size_t index = 0;
  for (std::size_t s = 128; s >= 2; s /= 2) {
    for (std::size_t start = 0; start < kKyberN; start += 2 * s) {
      const Residue zeta = zetas[k++];
      for (std::size_t j = start; j < start + s; ++j, ++index) {
        const Residue t = hook(index, FaultPosition::P1, mod_mul(zeta, r[j + s], kKyberQ));
        const Residue u = r[j];
        r[j + s] = hook(index, FaultPosition::P3, mod_sub(u, t, kKyberQ));
        r[j] = hook(index, FaultPosition::P2, mod_add(u, t, kKyberQ));
      }
    }
  }
}

KyberNttVector kyber_ntt(const KyberPoly& f);

/// Literal O(n^2) evaluation of the even/odd sums
///   out[2i]   = sum_j f[2j]   * gamma_i^j
///   out[2i+1] = sum_j f[2j+1] * gamma_i^j
KyberNttVector kyber_ntt_direct_oracle(const KyberPoly& f);

KyberPoly kyber_intt(const KyberNttVector& spectrum);

struct LinearPair {
  Residue c0 = 0;
  Residue c1 = 0;

  friend bool operator==(const LinearPair&, const LinearPair&) = default;
};

/// (a0 + a1 X)(b0 + b1 X) mod (X^2 - gamma).
constexpr LinearPair basemul(LinearPair a, LinearPair b, Residue gamma,
                             Modulus q = kKyberQ) noexcept {
  return {mod_add(mod_mul(a.c0, b.c0, q), mod_mul(mod_mul(a.c1, b.c1, q), gamma, q), q),
          mod_add(mod_mul(a.c0, b.c1, q), mod_mul(a.c1, b.c0, q), q)};
}

/// 128 basemuls, one per quadratic factor.
KyberNttVector kyber_basemul(const KyberNttVector& a, const KyberNttVector& b);

/// f * g mod (X^256 + 1, 3329).
KyberPoly kyber_poly_mul(const KyberPoly& f, const KyberPoly& g);

}  // namespace nttfd
