#include "nttfd/detect_nwc.hpp"

#include <optional>
#include <string>

namespace nttfd {
namespace {

void tally(OpTally* t, std::uint64_t adds, std::uint64_t mults, std::uint64_t scalings) {
  if (t == nullptr) return;
  t->additions += adds;
  t->multiplications += mults;
  t->scalings += scalings;
}

Residue sum_mod(std::span<const Residue> v, Modulus q) {
  Residue s = 0;
  for (const Residue x : v) s = mod_add(s, x, q);
  return s;
}

// Forward transform through the fault hook, returned in natural order.
NttOutput faulted_forward(const PolyZq& f, const NttDomainParams& params,
                          FaultInjector* injector, std::size_t offset) {
  if (injector == nullptr) return ntt_forward(f, params);
  std::vector<Residue> a(f.coeffs().begin(), f.coeffs().end());
  auto hook = injector->butterfly_view(offset);
  ntt_forward_kernel(std::span<Residue>(a), params, hook);
  return reorder({PolyZq(std::move(a), params.q()), Ordering::BitReversed}, Ordering::Natural);
}

}  // namespace

CodingParams CodingParams::make(const NttDomainParams& params, Residue alpha, Residue beta) {
  const Modulus q = params.q();
  if (alpha >= q || beta >= q) {
    throw Error(ErrorCode::InvalidCoding, "coding scalars must be reduced mod q");
  }
  CodingParams c;
  c.alpha_ = alpha;
  c.beta_ = beta;
  c.q_ = q;
  c.decode1_.resize(params.n());
  c.decode2_.resize(params.n());
  const auto w_inv = params.omega_inv_powers();
  for (std::size_t k = 0; k < params.n(); ++k) {
    const Residue factor = mod_add(alpha, mod_mul(beta, w_inv[k], q), q);
    if (factor == 0) {
      throw Error(ErrorCode::InvalidCoding, "alpha + beta*omega^-" + std::to_string(k) +
                                                " vanishes for alpha=" + std::to_string(alpha) +
                                                ", beta=" + std::to_string(beta));
    }
    c.decode1_[k] = mod_inv(factor, q);
    c.decode2_[k] = mod_mul(c.decode1_[k], c.decode1_[k], q);
  }
  return c;
}

PolyZq encode_shift_combine(const PolyZq& f, const CodingParams& coding, OpTally* t) {
  if (f.size() != coding.n() || f.modulus() != coding.q()) {
    throw Error(ErrorCode::LengthMismatch, "encoder input does not match the coding parameters");
  }
  return encode_shift_combine(f, coding.alpha(), coding.beta(), t);
}

PolyZq encode_shift_combine(const PolyZq& f, Residue alpha, Residue beta, OpTally* t) {
  const Modulus q = f.modulus();
  if (alpha >= q || beta >= q) {
    throw Error(ErrorCode::InvalidCoding, "coding scalars must be reduced mod q");
  }
  const std::size_t n = f.size();
  const bool scale_alpha = alpha != 1;
  std::vector<Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Residue a = scale_alpha ? mod_mul(alpha, f[i], q) : f[i];
    out[i] = mod_add(a, mod_mul(beta, f[(i + 1) % n], q), q);
  }
  tally(t, n, 0, scale_alpha ? 2 * n : n);
  return PolyZq(std::move(out), q);
}

NttOutput decode_spectrum(const NttOutput& encoded, const CodingParams& coding, int power,
                          OpTally* t) {
  if (encoded.ordering != Ordering::Natural) {
    throw Error(ErrorCode::OrderingMismatch, "decoder indexes by frequency; reorder first");
  }
  if (power != 1 && power != 2) {
    throw Error(ErrorCode::InvalidArgument, "decoder power must be 1 or 2");
  }
  if (encoded.values.size() != coding.n() || encoded.values.modulus() != coding.q()) {
    throw Error(ErrorCode::LengthMismatch, "decoder input does not match the coding parameters");
  }
  const auto table = power == 1 ? coding.decode1() : coding.decode2();
  const Modulus q = coding.q();
  std::vector<Residue> out(coding.n());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mod_mul(encoded.values[k], table[k], q);
  tally(t, 0, out.size(), 0);
  return {PolyZq(std::move(out), q), Ordering::Natural};
}

DetectionVerdict checksum_nwc(const PolyZq& f_tilde, const PolyZq& g_tilde, Residue h0, Modulus q,
                              OpTally* t) {
  const Residue expected = mod_mul(sum_mod(f_tilde.coeffs(), q), sum_mod(g_tilde.coeffs(), q), q);
  tally(t, (f_tilde.size() - 1) + (g_tilde.size() - 1), 1, 0);
  return DetectionVerdict::compare(h0, expected);
}

SiteSpace nwc_pointwise_sites(const NttDomainParams& params, bool include_pointwise) {
  return {2 * butterfly_count(params.n()), include_pointwise ? params.n() : 0, 0};
}

ProtectedNwcResult protected_nwc_pointwise(const PolyZq& f, const PolyZq& g,
                                           const NttDomainParams& params,
                                           const CodingParams& coding, const FaultPlan* faults,
                                           StageTallies* tallies) {
  params.require_psi();
  if (coding.n() != params.n() || coding.q() != params.q()) {
    throw Error(ErrorCode::InvalidCoding, "coding parameters built for another parameter set");
  }
  std::optional<FaultInjector> injector;
  if (faults != nullptr) {
    const bool pointwise = faults->sites.pointwise != 0;
    if (faults->sites != nwc_pointwise_sites(params, pointwise)) {
      throw Error(ErrorCode::SiteCountMismatch,
                  "plan covers " + std::to_string(faults->total_sites()) +
                      " sites, the protected product has " +
                      std::to_string(nwc_pointwise_sites(params, pointwise).total()));
    }
    injector.emplace(*faults, params.q());
  }
  FaultInjector* inj = injector ? &*injector : nullptr;
  OpTally* enc_t = tallies ? &tallies->encoder : nullptr;
  OpTally* dec_t = tallies ? &tallies->decoder : nullptr;
  OpTally* chk_t = tallies ? &tallies->checksum : nullptr;

  const Modulus q = params.q();
  const PolyZq f_tilde = pre_process(f, params);
  const PolyZq g_tilde = pre_process(g, params);
  const NttOutput fe = faulted_forward(encode_shift_combine(f_tilde, coding, enc_t), params, inj, 0);
  const NttOutput ge = faulted_forward(encode_shift_combine(g_tilde, coding, enc_t), params, inj,
                                       butterfly_count(params.n()));

  std::vector<Residue> prod(params.n());
  for (std::size_t k = 0; k < prod.size(); ++k) {
    const Residue p = mod_mul(fe.values[k], ge.values[k], q);
    prod[k] = inj != nullptr && faults->sites.pointwise != 0 ? inj->pointwise(k, p) : p;
  }
  NttOutput product =
      decode_spectrum({PolyZq(std::move(prod), q), Ordering::Natural}, coding, 2, dec_t);
  const DetectionVerdict verdict = checksum_nwc(f_tilde, g_tilde, product.values[0], q, chk_t);
  return {std::move(product), verdict};
}

ResoResult preprocess_reso_check(const PolyZq& f, const NttDomainParams& params,
                                 const FaultPlan* faults, std::size_t shift, OpTally* t) {
  params.require_psi();
  const std::size_t n = params.n();
  if (f.size() != n || f.modulus() != params.q()) {
    throw Error(ErrorCode::LengthMismatch, "input does not match the parameter set");
  }
  if (shift % n == 0) {
    throw Error(ErrorCode::InvalidArgument, "a zero shift is plain recomputation");
  }
  std::optional<FaultInjector> injector;
  if (faults != nullptr) {
    if (faults->sites != SiteSpace{0, 0, n}) {
      throw Error(ErrorCode::SiteCountMismatch, "pre-process plans cover exactly n multiplier slots");
    }
    injector.emplace(*faults, params.q());
  }
  const Modulus q = params.q();
  const auto psi = params.psi_powers();
  auto slot = [&](std::size_t s, Residue value, unsigned pass) {
    return injector ? injector->preprocess(s, value, pass) : value;
  };

  std::vector<Residue> first(n);
  std::vector<Residue> second(n);
  for (std::size_t i = 0; i < n; ++i) first[i] = slot(i, mod_mul(f[i], psi[i], q), 0);
  // Slot i now computes element (i + shift) mod n; writing it back at that
  // index undoes the rotation.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = (i + shift) % n;
    second[e] = slot(i, mod_mul(f[e], psi[e], q), 1);
  }
  tally(t, 0, n, 0);

  ResoResult result{PolyZq(std::move(first), q), {}, n};
  for (std::size_t i = 0; i < n; ++i) {
    if (result.output[i] != second[i]) {
      result.first_mismatch = i;
      result.verdict = DetectionVerdict::compare(result.output[i], second[i]);
      return result;
    }
  }
  result.verdict = DetectionVerdict::compare(result.output[0], second[0]);
  return result;
}

}  // namespace nttfd
