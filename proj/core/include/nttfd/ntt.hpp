#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nttfd/butterfly.hpp"
#include "nttfd/zq.hpp"

namespace nttfd {

enum class Ordering { Natural, BitReversed };

struct NttOutput {
  PolyZq values;
  Ordering ordering = Ordering::Natural;

  friend bool operator==(const NttOutput&, const NttOutput&) = default;
};

/// (n/2) * log2(n) butterflies per forward transform.
constexpr std::size_t butterfly_count(std::size_t n) noexcept { return n / 2 * log2_exact(n); }

/// In-place iterative Cooley-Tukey transform: natural-order input, bit-reversed
/// output. Stage s (block size m = 2^s, s = log2n .. 1) uses the twiddle
/// omega^(bitrev(k, log2n - s) * m/2) for block k.
template <ButterflyHook Hook>
void ntt_forward_kernel(std::span<Residue> a, const NttDomainParams& params, Hook& hook) {
  const Modulus q = params.q();
  const unsigned stages = params.log2n();
  const std::size_t n = params.n();
  const auto w = params.omega_powers();
  std::size_t index = 0;
  for (unsigned s = stages; s >= 1; --s) {
    const std::size_t m = std::size_t{1} << s;
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k < (n >> s); ++k) {
      const Residue wk = w[bit_reverse(static_cast<std::uint32_t>(k), stages - s) * half];
      Residue* lo = a.data() + k * m;
      Residue* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j, ++index) {
        const Residue u = lo[j];
        const Residue t = hook(index, FaultPosition::P1, mod_mul(wk, hi[j], q));
        lo[j] = hook(index, FaultPosition::P2, mod_add(u, t, q));
        hi[j] = hook(index, FaultPosition::P3, mod_sub(u, t, q));
      }
    }
  }
}

/// Forward transform. The result is permuted to `ordering` (natural by default).
/// Errors: LengthMismatch if |f| != n or f's modulus differs from q.
NttOutput ntt_forward(const PolyZq& f, const NttDomainParams& params,
                      Ordering ordering = Ordering::Natural);

/// Inverse transform of either ordering; n^-1 is applied inside the last stage.
PolyZq ntt_inverse(const NttOutput& spectrum, const NttDomainParams& params);

/// Bit-reversal permutation between the two orderings (an involution).
NttOutput reorder(const NttOutput& spectrum, Ordering target);

/// f[i] * psi^i. Errors: MissingPsi, LengthMismatch.
PolyZq pre_process(const PolyZq& f, const NttDomainParams& params);
/// f[i] * psi^-i. Errors: MissingPsi, LengthMismatch.
PolyZq post_process(const PolyZq& f, const NttDomainParams& params);

/// Component-wise product. Errors: OrderingMismatch, LengthMismatch.
NttOutput pointwise_mul(const NttOutput& a, const NttOutput& b, Modulus q);

/// f * g mod (X^n + 1, q) through pre-process, NTT, pointwise, INTT, post-process.
PolyZq nwc_multiply(const PolyZq& f, const PolyZq& g, const NttDomainParams& params);

/// O(n^2) negacyclic product; the reference the fast paths are checked against.
PolyZq schoolbook_negacyclic(const PolyZq& f, const PolyZq& g, Modulus q);

/// Cyclic left rotation: result[i] = f[(i + shift) mod n].
PolyZq rotate_left(const PolyZq& f, std::size_t shift);

/// Dense residue matrix used to pin transforms against their matrix form.
class NttMatrixOracle {
 public:
  /// theta(i, j) = omega^(i*j): the plain transform matrix.
  static NttMatrixOracle theta(const NttDomainParams& params);
  /// rho(i, j) = omega^(i*(j+1)): transform of a left-rotated-by-one input.
  static NttMatrixOracle rho(const NttDomainParams& params);
  /// 128x128 half-size Kyber matrix: entry (i, j) = 17^((2*bitrev7(i)+1)*j) mod 3329.
  static NttMatrixOracle kyber_half();

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Modulus modulus() const noexcept { return q_; }
  Residue at(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

 private:
  NttMatrixOracle(std::size_t rows, std::size_t cols, Modulus q)
      : rows_(rows), cols_(cols), q_(q), entries_(rows * cols) {}

  std::size_t rows_;
  std::size_t cols_;
  Modulus q_;
  std::vector<Residue> entries_;
};

/// Plain matrix-vector product mod q. Errors: LengthMismatch.
PolyZq ntt_matrix_oracle(const PolyZq& f, const NttMatrixOracle& oracle);

}  // namespace nttfd
