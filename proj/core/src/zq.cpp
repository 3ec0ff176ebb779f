#include "nttfd/zq.hpp"

#include <string>

namespace nttfd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::InvalidRoot: return "InvalidRoot";
    case ErrorCode::MissingPsi: return "MissingPsi";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::InvalidResidue: return "InvalidResidue";
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OrderingMismatch: return "OrderingMismatch";
    case ErrorCode::InvalidCoding: return "InvalidCoding";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidFaultCount: return "InvalidFaultCount";
    case ErrorCode::InvalidFaultPlan: return "InvalidFaultPlan";
    case ErrorCode::SiteCountMismatch: return "SiteCountMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Residue mod_inv(Residue a, Modulus q) {
  if (a % q == 0) {
    throw Error(ErrorCode::InversionOfZero, "zero has no inverse modulo " + std::to_string(q));
  }
  // Fermat; q is prime for every validated parameter set.
  return mod_pow(a, q - 2, q);
}

bool is_prime(Modulus q) noexcept {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

void NttDomainParams::require_psi() const {
  if (!has_psi()) {
    throw Error(ErrorCode::MissingPsi, "parameter set (n=" + std::to_string(n()) +
                                           ", q=" + std::to_string(q()) +
                                           ") has no 2n-th root psi");
  }
}

NttDomainParams validate_params(const NttDomainParams::Candidate& c, bool require_psi) {
  if (c.n < 2 || !is_power_of_two(c.n)) {
    throw Error(ErrorCode::InvalidLength,
                "n must be a power of two >= 2, got " + std::to_string(c.n));
  }
  if (!is_prime(c.q)) {
    throw Error(ErrorCode::InvalidModulus, std::to_string(c.q) + " is not prime");
  }
  if (require_psi && !c.psi) {
    throw Error(ErrorCode::MissingPsi, "negacyclic use requires psi");
  }
  const std::uint64_t order = c.psi ? 2 * std::uint64_t{c.n} : c.n;
  if ((c.q - 1) % order != 0) {
    throw Error(ErrorCode::InvalidModulus, std::to_string(order) + " does not divide q-1 = " +
                                               std::to_string(c.q - 1));
  }
  if (c.omega == 0 || c.omega >= c.q) {
    throw Error(ErrorCode::InvalidRoot, "omega must lie in (0, q)");
  }
  if (mod_pow(c.omega, c.n, c.q) != 1 || mod_pow(c.omega, c.n / 2, c.q) == 1) {
    throw Error(ErrorCode::InvalidRoot, "omega=" + std::to_string(c.omega) +
                                            " is not a primitive " + std::to_string(c.n) +
                                            "-th root of unity mod " + std::to_string(c.q));
  }
  if (c.psi) {
    const Residue psi = *c.psi;
    if (psi == 0 || psi >= c.q || mod_mul(psi, psi, c.q) != c.omega ||
        mod_pow(psi, c.n, c.q) != c.q - 1) {
      throw Error(ErrorCode::InvalidRoot, "psi=" + std::to_string(psi) +
                                              " is not a primitive 2n-th root squaring to omega");
    }
  }

  auto t = std::make_shared<NttDomainParams::Tables>();
  t->n = c.n;
  t->q = c.q;
  t->omega = c.omega;
  t->psi = c.psi;
  t->log2n = log2_exact(c.n);
  t->n_inv = mod_inv(static_cast<Residue>(c.n % c.q), c.q);

  const Residue omega_inv = mod_inv(c.omega, c.q);
  t->omega_pow.resize(c.n);
  t->omega_inv_pow.resize(c.n);
  Residue w = 1;
  Residue wi = 1;
  for (std::size_t k = 0; k < c.n; ++k) {
    t->omega_pow[k] = w;
    t->omega_inv_pow[k] = wi;
    w = mod_mul(w, c.omega, c.q);
    wi = mod_mul(wi, omega_inv, c.q);
  }
  if (c.psi) {
    const Residue psi_inv = mod_inv(*c.psi, c.q);
    t->psi_pow.resize(c.n);
    t->psi_inv_pow.resize(c.n);
    Residue p = 1;
    Residue pi = 1;
    for (std::size_t i = 0; i < c.n; ++i) {
      t->psi_pow[i] = p;
      t->psi_inv_pow[i] = pi;
      p = mod_mul(p, *c.psi, c.q);
      pi = mod_mul(pi, psi_inv, c.q);
    }
  }
  return NttDomainParams(std::move(t));
}

std::optional<Residue> find_psi(std::size_t n, Modulus q, Residue omega) {
  for (Residue x = 1; x < q; ++x) {
    if (mod_mul(x, x, q) == omega && mod_pow(x, n, q) == q - 1) return x;
  }
  return std::nullopt;
}

NttDomainParams round1_params() {
  static const NttDomainParams params = validate_params({256, 7681, 3844, Residue{62}}, true);
  return params;
}

NttDomainParams kyber_params() {
  static const NttDomainParams params = validate_params({256, 3329, 17, std::nullopt});
  return params;
}

NttDomainParams toy_params() {
  static const NttDomainParams params = validate_params({4, 17, 4, find_psi(4, 17, 4)}, true);
  return params;
}

PolyZq::PolyZq(std::vector<Residue> coeffs, Modulus q) : coeffs_(std::move(coeffs)), q_(q) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] >= q_) {
      throw Error(ErrorCode::InvalidResidue, "coefficient " + std::to_string(i) + " = " +
                                                 std::to_string(coeffs_[i]) +
                                                 " not reduced mod " + std::to_string(q_));
    }
  }
}

void PolyZq::set(std::size_t i, Residue value) {
  if (value >= q_) {
    throw Error(ErrorCode::InvalidResidue,
                std::to_string(value) + " not reduced mod " + std::to_string(q_));
  }
  coeffs_.at(i) = value;
}

}  // namespace nttfd
