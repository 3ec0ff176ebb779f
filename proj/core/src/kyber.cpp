#include "nttfd/kyber.hpp"

#include <algorithm>
#include <string>

namespace nttfd {
namespace {

struct KyberTables {
  std::array<Residue, kKyberPairs> zetas{};
  std::array<Residue, kKyberPairs> zetas_inv{};
  std::array<Residue, kKyberPairs> gammas{};
  Residue inv128 = 0;

  KyberTables() {
    for (std::uint32_t k = 0; k < kKyberPairs; ++k) {
      zetas[k] = mod_pow(kKyberOmega, bit_reverse(k, 7), kKyberQ);
      zetas_inv[k] = mod_inv(zetas[k], kKyberQ);
      gammas[k] = mod_pow(kKyberOmega, 2 * bit_reverse(k, 7) + 1, kKyberQ);
    }
    inv128 = mod_inv(128, kKyberQ);
  }
};

const KyberTables& tables() {
  static const KyberTables t;
  return t;
}

KyberCoeffs checked_coeffs(std::span<const Residue> values) {
  if (values.size() != kKyberN) {
    throw Error(ErrorCode::LengthMismatch,
                "Kyber polynomials have 256 coefficients, got " + std::to_string(values.size()));
  }
  KyberCoeffs out{};
  for (std::size_t i = 0; i < kKyberN; ++i) {
    if (values[i] >= kKyberQ) {
      throw Error(ErrorCode::InvalidResidue,
                  "coefficient " + std::to_string(i) + " not reduced mod 3329");
    }
    out[i] = values[i];
  }
  return out;
}

}  // namespace

KyberPoly KyberPoly::from(std::span<const Residue> values) { return {checked_coeffs(values)}; }

PolyZq KyberPoly::to_poly() const {
  return PolyZq(std::vector<Residue>(coeffs.begin(), coeffs.end()), kKyberQ);
}

KyberNttVector KyberNttVector::from(std::span<const Residue> values) {
  return {checked_coeffs(values)};
}

std::span<const Residue, kKyberPairs> kyber_zetas() noexcept { return tables().zetas; }
std::span<const Residue, kKyberPairs> kyber_gammas() noexcept { return tables().gammas; }

KyberNttVector kyber_ntt(const KyberPoly& f) {
  KyberNttVector out{f.coeffs};
  NoFaults hook;
  kyber_ntt_kernel(std::span<Residue, kKyberN>(out.coeffs), hook);
  return out;
}

KyberNttVector kyber_ntt_direct_oracle(const KyberPoly& f) {
  KyberNttVector out;
  for (std::uint32_t i = 0; i < kKyberPairs; ++i) {
    const Residue gamma = mod_pow(kKyberOmega, 2 * bit_reverse(i, 7) + 1, kKyberQ);
    Residue even = 0;
    Residue odd = 0;
    Residue power = 1;
    for (std::size_t j = 0; j < kKyberPairs; ++j) {
      even = mod_add(even, mod_mul(f.coeffs[2 * j], power, kKyberQ), kKyberQ);
      odd = mod_add(odd, mod_mul(f.coeffs[2 * j + 1], power, kKyberQ), kKyberQ);
      power = mod_mul(power, gamma, kKyberQ);
    }
    out.coeffs[2 * i] = even;
    out.coeffs[2 * i + 1] = odd;
  }
  return out;
}

KyberPoly kyber_intt(const KyberNttVector& spectrum) {
  const auto& t = tables();
  KyberPoly out{spectrum.coeffs};
  auto& r = out.coeffs;
  // Layers undone in reverse: half-length s = 2 .. 128, block b of layer s used
  // zetas[128/s + b] going forward. (c, d) -> (c + d, (c - d) / zeta); the
  // last layer also applies 128^-1 to both outputs.
  for (std::size_t s = 2; s <= 128; s *= 2) {
    const bool last = s == 128;
    std::size_t k = 128 / s;
    for (std::size_t start = 0; start < kKyberN; start += 2 * s, ++k) {
      Residue twiddle = t.zetas_inv[k];
      Residue sum_scale = 1;
      if (last) {
        twiddle = mod_mul(twiddle, t.inv128, kKyberQ);
        sum_scale = t.inv128;
      }
      for (std::size_t j = start; j < start + s; ++j) {
        const Residue c = r[j];
        const Residue d = r[j + s];
        r[j] = mod_mul(mod_add(c, d, kKyberQ), sum_scale, kKyberQ);
        r[j + s] = mod_mul(mod_sub(c, d, kKyberQ), twiddle, kKyberQ);
      }
    }
  }
  return out;
}

KyberNttVector kyber_basemul(const KyberNttVector& a, const KyberNttVector& b) {
  const auto gammas = kyber_gammas();
  KyberNttVector out;
  for (std::size_t i = 0; i < kKyberPairs; ++i) {
    const LinearPair p = basemul({a.coeffs[2 * i], a.coeffs[2 * i + 1]},
                                 {b.coeffs[2 * i], b.coeffs[2 * i + 1]}, gammas[i]);
    out.coeffs[2 * i] = p.c0;
    out.coeffs[2 * i + 1] = p.c1;
  }
  return out;
}

KyberPoly kyber_poly_mul(const KyberPoly& f, const KyberPoly& g) {
  return kyber_intt(kyber_basemul(kyber_ntt(f), kyber_ntt(g)));
}

}  // namespace nttfd
