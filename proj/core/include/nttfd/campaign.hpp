#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nttfd/fault.hpp"
#include "nttfd/op_tally.hpp"
#include "nttfd/zq.hpp"

namespace nttfd {

enum class Scheme { NwcPointwise, NwcPreprocess, KyberNtt };
enum class ReportFormat { Csv, Json, Markdown };

// Command-line spellings: nwc-mult / nwc-pre / kyber, normal / burst,
// additive / bitflip / add-one, csv / json / md.
std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(FaultMode m) noexcept;
std::string_view to_string(CorruptionKind c) noexcept;
std::string_view to_string(ReportFormat f) noexcept;
std::optional<Scheme> parse_scheme(std::string_view s) noexcept;
std::optional<FaultMode> parse_mode(std::string_view s) noexcept;
std::optional<CorruptionKind> parse_corruption(std::string_view s) noexcept;
std::optional<ReportFormat> parse_format(std::string_view s) noexcept;

/// "round1" (n=256, q=7681, omega=3844, psi=62) or "kyber" (n=256, q=3329, omega=17).
/// Errors: ConfigError for any other name.
NttDomainParams named_params(std::string_view name);

struct CampaignConfig {
  Scheme scheme = Scheme::KyberNtt;
  FaultMode mode = FaultMode::Normal;
  std::vector<std::size_t> fault_counts{1, 2, 4, 8, 16};
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  std::string params = "kyber";
  // Unset: 1, 1 for kyber and 1, 2 for the NWC schemes.
  std::optional<Residue> alpha;
  std::optional<Residue> beta;
  ReportFormat format = ReportFormat::Csv;
  CorruptionKind corruption = CorruptionKind::AdditiveUniform;
  // Also fault the n pointwise multipliers of the nwc-mult pipeline.
  bool fault_pointwise = false;
  // 0 picks COVERAGE_WORKERS, then the hardware concurrency.
  std::size_t workers = 0;
};

/// Errors: ConfigError naming every offending field.
void validate_config(const CampaignConfig& config);

/// Overlays the fields present in a JSON object onto `base`.
/// Errors: ConfigError on malformed JSON, unknown keys or bad values.
CampaignConfig parse_config_json(std::string_view text, CampaignConfig base = {});

/// Worker count after applying COVERAGE_WORKERS and the hardware default.
std::size_t resolve_workers(std::size_t requested);

/// Trials fall in exactly one bucket: detected (flagged, output wrong),
/// missed (not flagged, output wrong) or cancelled (output equals the clean
/// run, which includes trials whose plan drew no events). Flagged trials with
/// a clean output are false alarms and never happen in practice; they are
/// counted separately so the three buckets stay exact.
struct CoverageRow {
  Scheme scheme = Scheme::KyberNtt;
  FaultMode mode = FaultMode::Normal;
  std::size_t fault_count = 0;
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  std::uint64_t missed = 0;
  std::uint64_t cancelled = 0;
  std::uint64_t false_alarms = 0;
  std::uint64_t corrupted_sites = 0;  // events summed over all trials

  /// Denominator of the headline ratio: trials whose output was corrupted.
  std::uint64_t effective() const noexcept { return detected + missed; }
  double ratio() const noexcept {
    return effective() == 0 ? 0.0 : static_cast<double>(detected) / static_cast<double>(effective());
  }
  double mean_corrupted_sites() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(corrupted_sites) / static_cast<double>(trials);
  }

  friend bool operator==(const CoverageRow&, const CoverageRow&) = default;
};

struct CoverageEnvironment {
  std::uint64_t seed = 0;
  std::string params;
  Residue alpha = 1;
  Residue beta = 1;
  CorruptionKind corruption = CorruptionKind::AdditiveUniform;
  bool fault_pointwise = false;
  std::size_t samples = 0;
  std::string library_version;

  friend bool operator==(const CoverageEnvironment&, const CoverageEnvironment&) = default;
};

struct CoverageReport {
  CoverageEnvironment environment;
  std::vector<CoverageRow> rows;
  double wall_seconds = 0.0;
};

/// Runs `samples` independent trials per fault count. Each trial draws a fresh
/// uniform input, a fresh plan and runs the protected pipeline next to the
/// clean one. Trials are sharded over workers with per-trial derived seeds, so
/// the counts do not depend on the worker count.
/// Errors: ConfigError.
CoverageReport run_campaign(const CampaignConfig& config);

/// Concatenates rows of reports that share an environment.
/// Errors: ConfigError when environments differ.
CoverageReport merge_reports(std::span<const CoverageReport> reports);

struct EmitOptions {
  // Wall time is the only non-deterministic field; it is left out by default
  // so that re-runs stay byte-identical.
  bool include_timing = false;
};

/// CSV: header scheme,mode,fault_count,samples,detected,ratio,seed where
/// samples is the effective trial count, so ratio = detected/samples exactly.
/// JSON: the same fields per row plus the bucket counts and an environment
/// block. Markdown: one ratio column per (scheme, mode) group.
std::string render_report(const CoverageReport& report, ReportFormat format,
                          EmitOptions options = {});

/// Errors: IoError.
void emit_report(const CoverageReport& report, ReportFormat format,
                 const std::filesystem::path& destination, EmitOptions options = {});

/// Side-by-side ratios of the same campaigns under different corruption models.
std::string render_sensitivity_markdown(std::span<const CoverageReport> reports);

/// The seven shared fields of one emitted row, as read back from CSV or JSON.
struct ReportRecord {
  std::string scheme;
  std::string mode;
  std::size_t fault_count = 0;
  std::uint64_t samples = 0;
  std::uint64_t detected = 0;
  double ratio = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

std::vector<ReportRecord> parse_csv_report(std::string_view text);
std::vector<ReportRecord> parse_json_report(std::string_view text);

/// Detection-layer operation counts for one protected execution.
struct OpCountSummary {
  StageTallies measured;     // tallied while running the pipeline
  StageTallies closed_form;  // from n and the coding scalars alone
  std::uint64_t base_butterflies = 0;
};

/// Closed-form detection cost per protected execution:
///   kyber     encoder n adds + n scalings, decoder n adds + 2n mults,
///             checksum (n-1) + 1 adds + 1 scaling for 128*(f0+f1)
///   nwc-mult  twice the encoder, decoder n mults, checksum 2(n-1) adds + 1 mult
///   nwc-pre   the recomputation pass: n mults
/// An alpha other than 1 adds n scalings per encoded input.
StageTallies closed_form_op_count(Scheme scheme, std::size_t n, Residue alpha);

OpCountSummary static_op_count(Scheme scheme, std::string_view params,
                               std::optional<Residue> alpha = std::nullopt,
                               std::optional<Residue> beta = std::nullopt);

struct OverheadSummary {
  Scheme scheme = Scheme::KyberNtt;
  std::size_t iterations = 0;
  double baseline_ns = 0.0;   // mean per execution
  double protected_ns = 0.0;  // mean per execution
  OpCountSummary ops;

  double overhead() const noexcept {
    return baseline_ns == 0.0 ? 0.0 : protected_ns / baseline_ns - 1.0;
  }
};

/// Host timing of the protected vs unprotected path plus the static counts.
/// Errors: ConfigError (iterations = 0, incompatible scheme/params).
OverheadSummary benchmark_overhead(Scheme scheme, std::string_view params, std::size_t iterations);

}  // namespace nttfd
