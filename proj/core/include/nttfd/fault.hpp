#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nttfd/butterfly.hpp"
#include "nttfd/zq.hpp"

namespace nttfd {

enum class SiteKind { Butterfly, PointwiseMul, PreprocessMul };

enum class FaultMode { Normal, Burst };

// How a faulty site disturbs its value. AdditiveUniform is the reference model;
// the other two exist to measure how much coverage depends on that choice.
enum class CorruptionKind {
  AdditiveUniform,  // value + delta, delta uniform in [1, q)
  BitFlip,          // flip one bit of the residue's binary form, then reduce
  AddOne,           // value + 1
};

struct FaultSite {
  SiteKind kind = SiteKind::Butterfly;
  std::uint32_t index = 0;

  friend bool operator==(const FaultSite&, const FaultSite&) = default;
};

struct FaultEvent {
  FaultSite site;
  std::optional<FaultPosition> position;  // butterfly sites only
  CorruptionKind corruption = CorruptionKind::AdditiveUniform;
  // Delta for the additive models, bit index for BitFlip. Never a no-op.
  Residue operand = 1;

  friend bool operator==(const FaultEvent&, const FaultEvent&) = default;
};

/// The fault-able sites of one protected execution, laid out in global index
/// order: butterflies first, then pointwise multipliers, then pre-process slots.
struct SiteSpace {
  std::size_t butterflies = 0;
  std::size_t pointwise = 0;
  std::size_t preprocess = 0;

  constexpr std::size_t total() const noexcept { return butterflies + pointwise + preprocess; }
  FaultSite site_at(std::size_t global_index) const;

  friend bool operator==(const SiteSpace&, const SiteSpace&) = default;
};

struct FaultPlan {
  std::vector<FaultEvent> events;
  FaultMode mode = FaultMode::Normal;
  std::uint64_t seed = 0;
  SiteSpace sites;
  // Requested fault count (Normal) or the campaign label (Burst).
  std::size_t nominal_faults = 0;
  // Burst start index into the global site order; unused in Normal mode.
  std::size_t burst_start = 0;
  // Sticky events hit a site on every use (both RESO passes); transient ones
  // only on the first.
  bool sticky = true;

  std::size_t total_sites() const noexcept { return sites.total(); }
  bool empty() const noexcept { return events.empty(); }

  friend bool operator==(const FaultPlan&, const FaultPlan&) = default;
};

/// Each site independently faulty with probability F/N (an exact integer draw),
/// butterfly position uniform over P1..P3, corruption operand uniform for the
/// chosen model. Errors: InvalidFaultCount unless 0 <= F <= N.
FaultPlan build_fault_plan_normal(std::size_t faults, SiteSpace sites, std::uint64_t seed,
                                  Modulus q,
                                  CorruptionKind corruption = CorruptionKind::AdditiveUniform);

/// Start index uniform in [0, N); every site from there to the end is faulty.
/// `label` is recorded only. Errors: InvalidFaultCount if N = 0.
FaultPlan build_fault_plan_burst(SiteSpace sites, std::size_t label, std::uint64_t seed, Modulus q,
                                 CorruptionKind corruption = CorruptionKind::AdditiveUniform);

/// Burst with a fixed start; the random draw only picks positions and operands.
FaultPlan build_fault_plan_burst_from(std::size_t start, SiteSpace sites, std::size_t label,
                                      std::uint64_t seed, Modulus q,
                                      CorruptionKind corruption = CorruptionKind::AdditiveUniform);

/// Applies one event to a value. The result always differs from `value`.
Residue corrupt(Residue value, const FaultEvent& event, Modulus q);

/// Number of bits BitFlip may touch for modulus q (bit width of q - 1).
unsigned residue_bits(Modulus q) noexcept;

/// Resolves plan events against execution sites. One injector serves a whole
/// protected pipeline; hooks for individual kernels are views with an offset
/// into the butterfly range.
class FaultInjector {
 public:
  /// Errors: InvalidFaultPlan (duplicate site, index out of range, butterfly
  /// event without position).
  FaultInjector(const FaultPlan& plan, Modulus q);

  Residue butterfly(std::size_t index, FaultPosition position, Residue value);
  Residue pointwise(std::size_t index, Residue value);
  /// pass 0 is the primary computation, pass 1 the recomputation.
  Residue preprocess(std::size_t slot, Residue value, unsigned pass);

  std::size_t applied() const noexcept { return applied_; }
  const FaultPlan& plan() const noexcept { return *plan_; }

  /// Hook for one transform whose butterflies occupy [offset, offset + count).
  class ButterflyView {
   public:
    ButterflyView(FaultInjector& owner, std::size_t offset) : owner_(&owner), offset_(offset) {}
    Residue operator()(std::size_t index, FaultPosition pos, Residue v) {
      return owner_->butterfly(offset_ + index, pos, v);
    }

   private:
    FaultInjector* owner_;
    std::size_t offset_;
  };

  ButterflyView butterfly_view(std::size_t offset) { return {*this, offset}; }

 private:
  static constexpr std::int32_t kNone = -1;

  const FaultPlan* plan_;
  Modulus q_;
  std::vector<std::int32_t> butterfly_event_;
  std::vector<std::int32_t> pointwise_event_;
  std::vector<std::int32_t> preprocess_event_;
  std::size_t applied_ = 0;
};

enum class ExecutionTarget { GenericNtt, KyberNtt, PointwiseMul, Preprocess };

/// Fault-able sites of a bare target: (n/2)log2n, 896, n and n respectively.
SiteSpace target_sites(ExecutionTarget target, const NttDomainParams& params);

/// Runs one target with the plan applied in execution order.
///   GenericNtt   inputs {f}      -> natural-order spectrum
///   KyberNtt     inputs {f}      -> Kyber layout (params must be the Kyber set)
///   PointwiseMul inputs {A, B}   -> component-wise product
///   Preprocess   inputs {f}      -> f[i] * psi^i
/// Errors: SiteCountMismatch if the plan was built for a different site space,
/// LengthMismatch for wrong input arity or shape.
PolyZq instrumented_execute(ExecutionTarget target, std::span<const PolyZq> inputs,
                            const NttDomainParams& params, const FaultPlan& plan);

}  // namespace nttfd
