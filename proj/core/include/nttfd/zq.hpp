#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nttfd/errors.hpp"

namespace nttfd {

// Residues are kept fully reduced in [0, q). Products are formed in 64 bits,
// so any q below 2^32 is exact; both standard moduli sit far below 2^16.
using Residue = std::uint32_t;
using Modulus = std::uint32_t;

constexpr Residue mod_add(Residue a, Residue b, Modulus q) noexcept {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= q ? s - q : s);
}

constexpr Residue mod_sub(Residue a, Residue b, Modulus q) noexcept {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + q - b);
}

constexpr Residue mod_neg(Residue a, Modulus q) noexcept { return a == 0 ? 0 : q - a; }

constexpr Residue mod_mul(Residue a, Residue b, Modulus q) noexcept {
  return static_cast<Residue>((std::uint64_t{a} * b) % q);
}

constexpr Residue mod_pow(Residue base, std::uint64_t exp, Modulus q) noexcept {
  std::uint64_t result = 1 % q;
  std::uint64_t b = base % q;
  while (exp != 0) {
    if (exp & 1U) result = (result * b) % q;
    b = (b * b) % q;
    exp >>= 1U;
  }
  return static_cast<Residue>(result);
}

/// Multiplicative inverse modulo a prime q. Throws InversionOfZero for a = 0.
Residue mod_inv(Residue a, Modulus q);

/// Reverses the low `width` bits of k.
constexpr std::uint32_t bit_reverse(std::uint32_t k, unsigned width) noexcept {
  std::uint32_t r = 0;
  for (unsigned i = 0; i < width; ++i) {
    r = (r << 1U) | ((k >> i) & 1U);
  }
  return r;
}

bool is_prime(Modulus q) noexcept;

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

constexpr unsigned log2_exact(std::size_t n) noexcept {
  unsigned s = 0;
  while ((std::size_t{1} << s) < n) ++s;
  return s;
}

/// Ring and transform parameters. Instances only exist in validated form;
/// construct them through validate_params() or the named parameter sets.
/// Twiddle tables are computed once and shared between copies.
class NttDomainParams {
 public:
  struct Candidate {
    std::size_t n = 0;
    Modulus q = 0;
    Residue omega = 0;
    std::optional<Residue> psi;
  };

  std::size_t n() const noexcept { return tables_->n; }
  Modulus q() const noexcept { return tables_->q; }
  Residue omega() const noexcept { return tables_->omega; }
  std::optional<Residue> psi() const noexcept { return tables_->psi; }
  unsigned log2n() const noexcept { return tables_->log2n; }
  bool has_psi() const noexcept { return tables_->psi.has_value(); }

  /// Throws MissingPsi when the parameter set has no 2n-th root.
  void require_psi() const;

  /// omega^k for k in [0, n).
  std::span<const Residue> omega_powers() const noexcept { return tables_->omega_pow; }
  /// omega^-k for k in [0, n).
  std::span<const Residue> omega_inv_powers() const noexcept { return tables_->omega_inv_pow; }
  /// psi^i and psi^-i for i in [0, n); empty without psi.
  std::span<const Residue> psi_powers() const noexcept { return tables_->psi_pow; }
  std::span<const Residue> psi_inv_powers() const noexcept { return tables_->psi_inv_pow; }
  Residue n_inv() const noexcept { return tables_->n_inv; }

  friend NttDomainParams validate_params(const Candidate& candidate, bool require_psi);

 private:
  struct Tables {
    std::size_t n = 0;
    Modulus q = 0;
    Residue omega = 0;
    std::optional<Residue> psi;
    unsigned log2n = 0;
    Residue n_inv = 0;
    std::vector<Residue> omega_pow;
    std::vector<Residue> omega_inv_pow;
    std::vector<Residue> psi_pow;
    std::vector<Residue> psi_inv_pow;
  };

  explicit NttDomainParams(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

  std::shared_ptr<const Tables> tables_;
};

/// Checks every parameter invariant and precomputes the twiddle tables.
/// Errors: InvalidLength (n not a power of two >= 2), InvalidModulus (q not
/// prime or n / 2n does not divide q-1), InvalidRoot (omega or psi fails
/// primitivity), MissingPsi (require_psi with no psi supplied).
NttDomainParams validate_params(const NttDomainParams::Candidate& candidate,
                                bool require_psi = false);

/// Smallest psi with psi^2 = omega and psi^n = -1, if any.
std::optional<Residue> find_psi(std::size_t n, Modulus q, Residue omega);

/// n=256, q=7681, omega=3844, psi=62.
NttDomainParams round1_params();
/// n=256, q=3329, omega=17 (no 512-th root exists).
NttDomainParams kyber_params();
/// n=4, q=17, omega=4 with psi found by search; small enough for exhaustive tests.
NttDomainParams toy_params();

/// Fixed-length coefficient vector over Z_q.
class PolyZq {
 public:
  PolyZq(std::vector<Residue> coeffs, Modulus q);

  static PolyZq zero(std::size_t n, Modulus q) { return PolyZq(std::vector<Residue>(n, 0), q); }

  std::size_t size() const noexcept { return coeffs_.size(); }
  Modulus modulus() const noexcept { return q_; }
  Residue operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  std::span<const Residue> coeffs() const noexcept { return coeffs_; }

  /// Throws InvalidResidue if value >= q.
  void set(std::size_t i, Residue value);

  friend bool operator==(const PolyZq&, const PolyZq&) = default;

 private:
  std::vector<Residue> coeffs_;
  Modulus q_ = 0;
};

}  // namespace nttfd
