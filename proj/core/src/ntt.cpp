#include "nttfd/ntt.hpp"

#include <string>

namespace nttfd {
namespace {

void check_shape(const PolyZq& f, const NttDomainParams& params) {
  if (f.size() != params.n() || f.modulus() != params.q()) {
    throw Error(ErrorCode::LengthMismatch,
                "polynomial of length " + std::to_string(f.size()) + " mod " +
                    std::to_string(f.modulus()) + " does not match n=" +
                    std::to_string(params.n()) + ", q=" + std::to_string(params.q()));
  }
}

std::vector<Residue> permute_bit_reversed(std::span<const Residue> in) {
  const unsigned width = log2_exact(in.size());
  std::vector<Residue> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[bit_reverse(static_cast<std::uint32_t>(i), width)] = in[i];
  }
  return out;
}

PolyZq scale_by_table(const PolyZq& f, std::span<const Residue> table, Modulus q) {
  std::vector<Residue> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mod_mul(f[i], table[i], q);
  return PolyZq(std::move(out), q);
}

}  // namespace

NttOutput ntt_forward(const PolyZq& f, const NttDomainParams& params, Ordering ordering) {
  check_shape(f, params);
  std::vector<Residue> a(f.coeffs().begin(), f.coeffs().end());
  NoFaults hook;
  ntt_forward_kernel(std::span<Residue>(a), params, hook);
  if (ordering == Ordering::Natural) a = permute_bit_reversed(a);
  return {PolyZq(std::move(a), params.q()), ordering};
}

PolyZq ntt_inverse(const NttOutput& spectrum, const NttDomainParams& params) {
  check_shape(spectrum.values, params);
  const Modulus q = params.q();
  const std::size_t n = params.n();
  const unsigned stages = params.log2n();
  const auto w_inv = params.omega_inv_powers();

  std::vector<Residue> a(spectrum.values.coeffs().begin(), spectrum.values.coeffs().end());
  if (spectrum.ordering == Ordering::Natural) a = permute_bit_reversed(a);

  // Gentleman-Sande network undoing the forward stages in reverse order:
  // (c, d) -> (c + d, (c - d) * w^-1). Each stage doubles the values, so the
  // final stage (single block, w = 1) carries the n^-1 factor for both outputs.
  for (unsigned s = 1; s <= stages; ++s) {
    const std::size_t m = std::size_t{1} << s;
    const std::size_t half = m / 2;
    const bool last = s == stages;
    for (std::size_t k = 0; k < (n >> s); ++k) {
      Residue twiddle = w_inv[bit_reverse(static_cast<std::uint32_t>(k), stages - s) * half];
      if (last) twiddle = mod_mul(twiddle, params.n_inv(), q);
      const Residue sum_scale = last ? params.n_inv() : 1;
      Residue* lo = a.data() + k * m;
      Residue* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const Residue c = lo[j];
        const Residue d = hi[j];
        lo[j] = mod_mul(mod_add(c, d, q), sum_scale, q);
        hi[j] = mod_mul(mod_sub(c, d, q), twiddle, q);
      }
    }
  }
  return PolyZq(std::move(a), q);
}

NttOutput reorder(const NttOutput& spectrum, Ordering target) {
  if (spectrum.ordering == target) return spectrum;
  return {PolyZq(permute_bit_reversed(spectrum.values.coeffs()), spectrum.values.modulus()),
          target};
}

PolyZq pre_process(const PolyZq& f, const NttDomainParams& params) {
  params.require_psi();
  check_shape(f, params);
  return scale_by_table(f, params.psi_powers(), params.q());
}

PolyZq post_process(const PolyZq& f, const NttDomainParams& params) {
  params.require_psi();
  check_shape(f, params);
  return scale_by_table(f, params.psi_inv_powers(), params.q());
}

NttOutput pointwise_mul(const NttOutput& a, const NttOutput& b, Modulus q) {
  if (a.ordering != b.ordering) {
    throw Error(ErrorCode::OrderingMismatch, "pointwise product of differently ordered spectra");
  }
  if (a.values.size() != b.values.size() || a.values.modulus() != q ||
      b.values.modulus() != q) {
    throw Error(ErrorCode::LengthMismatch, "pointwise operands differ in length or modulus");
  }
  return {scale_by_table(a.values, b.values.coeffs(), q), a.ordering};
}

PolyZq nwc_multiply(const PolyZq& f, const PolyZq& g, const NttDomainParams& params) {
  params.require_psi();
  // Bit-reversed spectra are fine here: the product never leaves the pipeline.
  const auto fh = ntt_forward(pre_process(f, params), params, Ordering::BitReversed);
  const auto gh = ntt_forward(pre_process(g, params), params, Ordering::BitReversed);
  return post_process(ntt_inverse(pointwise_mul(fh, gh, params.q()), params), params);
}

PolyZq schoolbook_negacyclic(const PolyZq& f, const PolyZq& g, Modulus q) {
  if (f.size() != g.size() || f.modulus() != q || g.modulus() != q) {
    throw Error(ErrorCode::LengthMismatch, "schoolbook operands differ in length or modulus");
  }
  const std::size_t n = f.size();
  std::vector<Residue> h(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Residue p = mod_mul(f[i], g[j], q);
      const std::size_t k = i + j;
      if (k < n) {
        h[k] = mod_add(h[k], p, q);
      } else {
        h[k - n] = mod_sub(h[k - n], p, q);
      }
    }
  }
  return PolyZq(std::move(h), q);
}

PolyZq rotate_left(const PolyZq& f, std::size_t shift) {
  const std::size_t n = f.size();
  std::vector<Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f[(i + shift) % n];
  return PolyZq(std::move(out), f.modulus());
}

NttMatrixOracle NttMatrixOracle::theta(const NttDomainParams& params) {
  const std::size_t n = params.n();
  NttMatrixOracle m(n, n, params.q());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.entries_[i * n + j] = mod_pow(params.omega(), std::uint64_t{i} * j, params.q());
    }
  }
  return m;
}

NttMatrixOracle NttMatrixOracle::rho(const NttDomainParams& params) {
  const std::size_t n = params.n();
  NttMatrixOracle m(n, n, params.q());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.entries_[i * n + j] = mod_pow(params.omega(), std::uint64_t{i} * (j + 1), params.q());
    }
  }
  return m;
}

NttMatrixOracle NttMatrixOracle::kyber_half() {
  constexpr Modulus q = 3329;
  constexpr Residue omega = 17;
  NttMatrixOracle m(128, 128, q);
  for (std::uint32_t i = 0; i < 128; ++i) {
    const Residue gamma = mod_pow(omega, 2 * bit_reverse(i, 7) + 1, q);
    for (std::size_t j = 0; j < 128; ++j) m.entries_[i * 128 + j] = mod_pow(gamma, j, q);
  }
  return m;
}

PolyZq ntt_matrix_oracle(const PolyZq& f, const NttMatrixOracle& oracle) {
  if (f.size() != oracle.cols() || f.modulus() != oracle.modulus()) {
    throw Error(ErrorCode::LengthMismatch, "vector does not match matrix dimensions");
  }
  const Modulus q = oracle.modulus();
  std::vector<Residue> out(oracle.rows(), 0);
  for (std::size_t i = 0; i < oracle.rows(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < oracle.cols(); ++j) {
      acc = (acc + std::uint64_t{oracle.at(i, j)} * f[j]) % q;
    }
    out[i] = static_cast<Residue>(acc);
  }
  return PolyZq(std::move(out), q);
}

}  // namespace nttfd
