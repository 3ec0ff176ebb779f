#include "nttfd/fault.hpp"

#include <bit>
#include <string>

#include "nttfd/kyber.hpp"
#include "nttfd/ntt.hpp"
#include "nttfd/rng.hpp"

namespace nttfd {
namespace {

Residue draw_operand(Engine& rng, CorruptionKind kind, Modulus q) {
  switch (kind) {
    case CorruptionKind::AdditiveUniform:
      return static_cast<Residue>(1 + uniform_below(rng, q - 1));
    case CorruptionKind::BitFlip:
      return static_cast<Residue>(uniform_below(rng, residue_bits(q)));
    case CorruptionKind::AddOne:
      return 1;
  }
  return 1;
}

FaultEvent draw_event(Engine& rng, const SiteSpace& sites, std::size_t global_index,
                      CorruptionKind kind, Modulus q) {
  FaultEvent e;
  e.site = sites.site_at(global_index);
  if (e.site.kind == SiteKind::Butterfly) {
    e.position = static_cast<FaultPosition>(uniform_below(rng, 3));
  }
  e.corruption = kind;
  e.operand = draw_operand(rng, kind, q);
  return e;
}

std::vector<std::int32_t> index_events(const FaultPlan& plan, SiteKind kind, std::size_t count) {
  std::vector<std::int32_t> table(count, -1);
  for (std::size_t i = 0; i < plan.events.size(); ++i) {
    const FaultEvent& e = plan.events[i];
    if (e.site.kind != kind) continue;
    if (e.site.index >= count) {
      throw Error(ErrorCode::InvalidFaultPlan,
                  "event site index " + std::to_string(e.site.index) + " out of range");
    }
    if (table[e.site.index] != -1) {
      throw Error(ErrorCode::InvalidFaultPlan,
                  "two events on site " + std::to_string(e.site.index));
    }
    if (kind == SiteKind::Butterfly && !e.position) {
      throw Error(ErrorCode::InvalidFaultPlan, "butterfly event without a position");
    }
    table[e.site.index] = static_cast<std::int32_t>(i);
  }
  return table;
}

}  // namespace

FaultSite SiteSpace::site_at(std::size_t global_index) const {
  if (global_index < butterflies) {
    return {SiteKind::Butterfly, static_cast<std::uint32_t>(global_index)};
  }
  global_index -= butterflies;
  if (global_index < pointwise) {
    return {SiteKind::PointwiseMul, static_cast<std::uint32_t>(global_index)};
  }
  global_index -= pointwise;
  if (global_index < preprocess) {
    return {SiteKind::PreprocessMul, static_cast<std::uint32_t>(global_index)};
  }
  throw Error(ErrorCode::InvalidFaultPlan, "site index beyond the site space");
}

unsigned residue_bits(Modulus q) noexcept {
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint32_t>(q - 1)));
}

FaultPlan build_fault_plan_normal(std::size_t faults, SiteSpace sites, std::uint64_t seed,
                                  Modulus q, CorruptionKind corruption) {
  const std::size_t n = sites.total();
  if (faults > n) {
    throw Error(ErrorCode::InvalidFaultCount, "fault count " + std::to_string(faults) +
                                                  " exceeds site count " + std::to_string(n));
  }
  FaultPlan plan;
  plan.mode = FaultMode::Normal;
  plan.seed = seed;
  plan.sites = sites;
  plan.nominal_faults = faults;
  if (faults == 0) return plan;

  Engine rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    // P(faulty) = F/N exactly.
    if (uniform_below(rng, n) < faults) {
      plan.events.push_back(draw_event(rng, sites, i, corruption, q));
    }
  }
  return plan;
}

FaultPlan build_fault_plan_burst(SiteSpace sites, std::size_t label, std::uint64_t seed, Modulus q,
                                 CorruptionKind corruption) {
  const std::size_t n = sites.total();
  if (n == 0) throw Error(ErrorCode::InvalidFaultCount, "burst plan over an empty site space");
  Engine rng(seed);
  const std::size_t start = uniform_below(rng, n);
  return build_fault_plan_burst_from(start, sites, label, splitmix64(seed ^ start), q, corruption);
}

FaultPlan build_fault_plan_burst_from(std::size_t start, SiteSpace sites, std::size_t label,
                                      std::uint64_t seed, Modulus q, CorruptionKind corruption) {
  const std::size_t n = sites.total();
  if (start >= n) {
    throw Error(ErrorCode::InvalidFaultCount, "burst start " + std::to_string(start) +
                                                  " outside [0, " + std::to_string(n) + ")");
  }
  FaultPlan plan;
  plan.mode = FaultMode::Burst;
  plan.seed = seed;
  plan.sites = sites;
  plan.nominal_faults = label;
  plan.burst_start = start;
  Engine rng(seed);
  plan.events.reserve(n - start);
  for (std::size_t i = start; i < n; ++i) {
    plan.events.push_back(draw_event(rng, sites, i, corruption, q));
  }
  return plan;
}

Residue corrupt(Residue value, const FaultEvent& event, Modulus q) {
  switch (event.corruption) {
    case CorruptionKind::AdditiveUniform:
    case CorruptionKind::AddOne:
      return mod_add(value, event.operand % q, q);
    case CorruptionKind::BitFlip:
      // |flipped - value| = 2^b, never a multiple of an odd prime q.
      return static_cast<Residue>((value ^ (Residue{1} << event.operand)) % q);
  }
  return value;
}

FaultInjector::FaultInjector(const FaultPlan& plan, Modulus q)
    : plan_(&plan),
      q_(q),
      butterfly_event_(index_events(plan, SiteKind::Butterfly, plan.sites.butterflies)),
      pointwise_event_(index_events(plan, SiteKind::PointwiseMul, plan.sites.pointwise)),
      preprocess_event_(index_events(plan, SiteKind::PreprocessMul, plan.sites.preprocess)) {
  for (const FaultEvent& e : plan.events) {
    if ((e.corruption != CorruptionKind::BitFlip && e.operand % q == 0) ||
        (e.corruption == CorruptionKind::BitFlip && e.operand >= residue_bits(q))) {
      throw Error(ErrorCode::InvalidFaultPlan, "event would not change its site");
    }
  }
}

Residue FaultInjector::butterfly(std::size_t index, FaultPosition position, Residue value) {
  const std::int32_t e = butterfly_event_[index];
  if (e == kNone) return value;
  const FaultEvent& event = plan_->events[static_cast<std::size_t>(e)];
  if (*event.position != position) return value;
  ++applied_;
  return corrupt(value, event, q_);
}

Residue FaultInjector::pointwise(std::size_t index, Residue value) {
  const std::int32_t e = pointwise_event_[index];
  if (e == kNone) return value;
  ++applied_;
  return corrupt(value, plan_->events[static_cast<std::size_t>(e)], q_);
}

Residue FaultInjector::preprocess(std::size_t slot, Residue value, unsigned pass) {
  const std::int32_t e = preprocess_event_[slot];
  if (e == kNone) return value;
  if (pass > 0 && !plan_->sticky) return value;
  // A sticky event counts once however many passes it touches.
  if (pass == 0) ++applied_;
  return corrupt(value, plan_->events[static_cast<std::size_t>(e)], q_);
}

SiteSpace target_sites(ExecutionTarget target, const NttDomainParams& params) {
  switch (target) {
    case ExecutionTarget::GenericNtt: return {butterfly_count(params.n()), 0, 0};
    case ExecutionTarget::KyberNtt: return {kKyberButterflies, 0, 0};
    case ExecutionTarget::PointwiseMul: return {0, params.n(), 0};
    case ExecutionTarget::Preprocess: return {0, 0, params.n()};
  }
  return {};
}

PolyZq instrumented_execute(ExecutionTarget target, std::span<const PolyZq> inputs,
                            const NttDomainParams& params, const FaultPlan& plan) {
  const SiteSpace expected = target_sites(target, params);
  if (plan.sites != expected) {
    throw Error(ErrorCode::SiteCountMismatch,
                "plan covers " + std::to_string(plan.total_sites()) + " sites, target has " +
                    std::to_string(expected.total()));
  }
  const std::size_t arity = target == ExecutionTarget::PointwiseMul ? 2 : 1;
  if (inputs.size() != arity) {
    throw Error(ErrorCode::LengthMismatch, "target expects " + std::to_string(arity) + " inputs");
  }
  for (const PolyZq& in : inputs) {
    if (in.size() != params.n() || in.modulus() != params.q()) {
      throw Error(ErrorCode::LengthMismatch, "input does not match the parameter set");
    }
  }

  FaultInjector injector(plan, params.q());
  const Modulus q = params.q();
  switch (target) {
    case ExecutionTarget::GenericNtt: {
      std::vector<Residue> a(inputs[0].coeffs().begin(), inputs[0].coeffs().end());
      auto hook = injector.butterfly_view(0);
      ntt_forward_kernel(std::span<Residue>(a), params, hook);
      return reorder({PolyZq(std::move(a), q), Ordering::BitReversed}, Ordering::Natural).values;
    }
    case ExecutionTarget::KyberNtt: {
      if (params.n() != kKyberN || q != kKyberQ || params.omega() != kKyberOmega) {
        throw Error(ErrorCode::LengthMismatch, "Kyber target needs the Kyber parameter set");
      }
      KyberPoly r = KyberPoly::from(inputs[0].coeffs());
      auto hook = injector.butterfly_view(0);
      kyber_ntt_kernel(std::span<Residue, kKyberN>(r.coeffs), hook);
      return r.to_poly();
    }
    case ExecutionTarget::PointwiseMul: {
      std::vector<Residue> out(params.n());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = injector.pointwise(i, mod_mul(inputs[0][i], inputs[1][i], q));
      }
      return PolyZq(std::move(out), q);
    }
    case ExecutionTarget::Preprocess: {
      params.require_psi();
      const auto psi = params.psi_powers();
      std::vector<Residue> out(params.n());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = injector.preprocess(i, mod_mul(inputs[0][i], psi[i], q), 0);
      }
      return PolyZq(std::move(out), q);
    }
  }
  return inputs[0];
}

}  // namespace nttfd
