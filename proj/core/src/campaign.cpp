#include "nttfd/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"
#include "nttfd/detect_kyber.hpp"
#include "nttfd/detect_nwc.hpp"
#include "nttfd/kyber.hpp"
#include "nttfd/ntt.hpp"
#include "nttfd/rng.hpp"
#include "nttfd/version.hpp"

namespace nttfd {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Trials

enum class Outcome { Detected, Missed, Cancelled, FalseAlarm };

struct TrialResult {
  Outcome outcome = Outcome::Cancelled;
  std::size_t events = 0;
};

struct TrialContext {
  Scheme scheme;
  FaultMode mode;
  std::size_t faults;
  CorruptionKind corruption;
  NttDomainParams params;
  SiteSpace sites;
  std::optional<CodingParams> nwc_coding;
  std::optional<KyberCodingParams> kyber_coding;
};

PolyZq random_poly(Engine& rng, std::size_t n, Modulus q) {
  std::vector<Residue> c(n);
  for (auto& x : c) x = static_cast<Residue>(uniform_below(rng, q));
  return PolyZq(std::move(c), q);
}

KyberPoly random_kyber(Engine& rng) {
  KyberPoly f;
  for (auto& x : f.coeffs) x = static_cast<Residue>(uniform_below(rng, kKyberQ));
  return f;
}

FaultPlan make_plan(const TrialContext& ctx, std::uint64_t seed) {
  if (ctx.mode == FaultMode::Normal) {
    return build_fault_plan_normal(ctx.faults, ctx.sites, seed, ctx.params.q(), ctx.corruption);
  }
  return build_fault_plan_burst(ctx.sites, ctx.faults, seed, ctx.params.q(), ctx.corruption);
}

Outcome classify(bool corrupted, bool flagged) {
  if (corrupted) return flagged ? Outcome::Detected : Outcome::Missed;
  return flagged ? Outcome::FalseAlarm : Outcome::Cancelled;
}

TrialResult run_trial(const TrialContext& ctx, std::uint64_t trial_seed) {
  Engine rng(derive_seed(trial_seed, {0}));
  const FaultPlan plan = make_plan(ctx, derive_seed(trial_seed, {1}));
  TrialResult r;
  r.events = plan.events.size();
  switch (ctx.scheme) {
    case Scheme::NwcPointwise: {
      const PolyZq f = random_poly(rng, ctx.params.n(), ctx.params.q());
      const PolyZq g = random_poly(rng, ctx.params.n(), ctx.params.q());
      const auto clean = protected_nwc_pointwise(f, g, ctx.params, *ctx.nwc_coding);
      const auto faulty = protected_nwc_pointwise(f, g, ctx.params, *ctx.nwc_coding, &plan);
      r.outcome = classify(faulty.product != clean.product, faulty.verdict.flagged);
      break;
    }
    case Scheme::NwcPreprocess: {
      const PolyZq f = random_poly(rng, ctx.params.n(), ctx.params.q());
      const PolyZq clean = pre_process(f, ctx.params);
      const auto faulty = preprocess_reso_check(f, ctx.params, &plan);
      r.outcome = classify(faulty.output != clean, faulty.verdict.flagged);
      break;
    }
    case Scheme::KyberNtt: {
      const KyberPoly f = random_kyber(rng);
      const KyberNttVector clean = kyber_ntt(f);
      const auto faulty = protected_kyber_ntt(f, *ctx.kyber_coding, &plan);
      r.outcome = classify(faulty.spectrum != clean, faulty.verdict.flagged);
      break;
    }
  }
  return r;
}

void accumulate(CoverageRow& row, const TrialResult& r) {
  ++row.trials;
  row.corrupted_sites += r.events;
  switch (r.outcome) {
    case Outcome::Detected: ++row.detected; break;
    case Outcome::Missed: ++row.missed; break;
    case Outcome::Cancelled: ++row.cancelled; break;
    case Outcome::FalseAlarm: ++row.false_alarms; break;
  }
}

void add_counts(CoverageRow& into, const CoverageRow& from) {
  into.trials += from.trials;
  into.detected += from.detected;
  into.missed += from.missed;
  into.cancelled += from.cancelled;
  into.false_alarms += from.false_alarms;
  into.corrupted_sites += from.corrupted_sites;
}

Residue default_alpha(Scheme s) { return s == Scheme::KyberNtt ? 1 : kDefaultNwcAlpha; }
Residue default_beta(Scheme s) { return s == Scheme::KyberNtt ? 1 : kDefaultNwcBeta; }

SiteSpace scheme_sites(Scheme scheme, const NttDomainParams& params, bool fault_pointwise) {
  switch (scheme) {
    case Scheme::NwcPointwise: return nwc_pointwise_sites(params, fault_pointwise);
    case Scheme::NwcPreprocess: return {0, 0, params.n()};
    case Scheme::KyberNtt: return {kKyberButterflies, 0, 0};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Formatting helpers

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", ratio * 100.0);
  return buf;
}

std::string group_label(Scheme s, FaultMode m) {
  return std::string(to_string(s)) + " " + std::string(to_string(m));
}

std::string environment_line(const CoverageEnvironment& env) {
  std::ostringstream os;
  const NttDomainParams p = named_params(env.params);
  os << "params: " << env.params << " (n=" << p.n() << ", q=" << p.q() << ", omega=" << p.omega()
     << "); alpha=" << env.alpha << ", beta=" << env.beta
     << "; corruption=" << to_string(env.corruption) << "; seed=" << env.seed
     << "; samples=" << env.samples << " per row"
     << (env.fault_pointwise ? "; pointwise multipliers faulted" : "")
     << "; nttfd " << env.library_version;
  return os.str();
}

template <class Enum>
Enum parse_or_throw(std::optional<Enum> v, std::string_view field, std::string_view text) {
  if (!v) {
    throw Error(ErrorCode::ConfigError,
                std::string(field) + ": unrecognised value '" + std::string(text) + "'");
  }
  return *v;
}

std::vector<std::size_t> parse_fault_list(const nlohmann::json& j) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<std::size_t>());
    return out;
  }
  std::stringstream ss(j.get<std::string>());
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ConfigError, "cannot parse " + std::string(what) + " '" +
                                            std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ConfigError, "cannot parse ratio '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::NwcPointwise: return "nwc-mult";
    case Scheme::NwcPreprocess: return "nwc-pre";
    case Scheme::KyberNtt: return "kyber";
  }
  return "?";
}

std::string_view to_string(FaultMode m) noexcept {
  return m == FaultMode::Normal ? "normal" : "burst";
}

std::string_view to_string(CorruptionKind c) noexcept {
  switch (c) {
    case CorruptionKind::AdditiveUniform: return "additive";
    case CorruptionKind::BitFlip: return "bitflip";
    case CorruptionKind::AddOne: return "add-one";
  }
  return "?";
}

std::string_view to_string(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Markdown: return "md";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) noexcept {
  for (Scheme v : {Scheme::NwcPointwise, Scheme::NwcPreprocess, Scheme::KyberNtt}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<FaultMode> parse_mode(std::string_view s) noexcept {
  for (FaultMode v : {FaultMode::Normal, FaultMode::Burst}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<CorruptionKind> parse_corruption(std::string_view s) noexcept {
  for (CorruptionKind v :
       {CorruptionKind::AdditiveUniform, CorruptionKind::BitFlip, CorruptionKind::AddOne}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<ReportFormat> parse_format(std::string_view s) noexcept {
  for (ReportFormat v : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::Markdown}) {
    if (to_string(v) == s) return v;
  }
  if (s == "markdown") return ReportFormat::Markdown;
  return std::nullopt;
}

NttDomainParams named_params(std::string_view name) {
  if (name == "round1") return round1_params();
  if (name == "kyber") return kyber_params();
  throw Error(ErrorCode::ConfigError,
              "params: unknown parameter set '" + std::string(name) + "' (round1|kyber)");
}

// ---------------------------------------------------------------------------
// Configuration

void validate_config(const CampaignConfig& c) {
  std::vector<std::string> problems;
  if (c.samples < 1) problems.emplace_back("samples: must be >= 1");
  if (c.fault_counts.empty()) problems.emplace_back("faults: list must not be empty");

  std::optional<NttDomainParams> params;
  if (c.params == "round1" || c.params == "kyber") {
    params = named_params(c.params);
  } else {
    problems.emplace_back("params: unknown parameter set '" + c.params + "' (round1|kyber)");
  }

  if (params) {
    if (c.scheme == Scheme::KyberNtt && c.params != "kyber") {
      problems.emplace_back("scheme: kyber requires params=kyber");
    }
    if (c.scheme != Scheme::KyberNtt && !params->has_psi()) {
      problems.emplace_back("scheme: " + std::string(to_string(c.scheme)) +
                            " needs a 2n-th root psi; params=" + c.params + " has none");
    }
    if (c.fault_pointwise && c.scheme != Scheme::NwcPointwise) {
      problems.emplace_back("fault_pointwise: only applies to nwc-mult");
    }
    const std::size_t sites = scheme_sites(c.scheme, *params, c.fault_pointwise).total();
    for (const std::size_t f : c.fault_counts) {
      if (f < 1) {
        problems.emplace_back("faults: counts must be >= 1");
      } else if (c.mode == FaultMode::Normal && f > sites) {
        problems.emplace_back("faults: " + std::to_string(f) + " exceeds the " +
                              std::to_string(sites) + " fault sites");
      }
    }
    const Residue alpha = c.alpha.value_or(default_alpha(c.scheme));
    const Residue beta = c.beta.value_or(default_beta(c.scheme));
    if (alpha >= params->q() || beta >= params->q()) {
      problems.emplace_back("alpha/beta: must be reduced modulo q=" + std::to_string(params->q()));
    } else {
      try {
        if (c.scheme == Scheme::KyberNtt) {
          (void)KyberCodingParams::make(alpha, beta);
        } else if (c.scheme == Scheme::NwcPointwise) {
          (void)CodingParams::make(*params, alpha, beta);
        }
      } catch (const Error& e) {
        problems.emplace_back(std::string("alpha/beta: ") + e.what());
      }
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid campaign configuration";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::ConfigError, msg);
  }
}

CampaignConfig parse_config_json(std::string_view text, CampaignConfig c) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scheme") {
        const auto s = value.get<std::string>();
        c.scheme = parse_or_throw(parse_scheme(s), key, s);
      } else if (key == "mode") {
        const auto s = value.get<std::string>();
        c.mode = parse_or_throw(parse_mode(s), key, s);
      } else if (key == "faults" || key == "fault_counts") {
        c.fault_counts = parse_fault_list(value);
      } else if (key == "samples") {
        c.samples = value.get<std::size_t>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "params") {
        c.params = value.get<std::string>();
      } else if (key == "alpha") {
        c.alpha = value.get<Residue>();
      } else if (key == "beta") {
        c.beta = value.get<Residue>();
      } else if (key == "format" || key == "output_format") {
        const auto s = value.get<std::string>();
        c.format = parse_or_throw(parse_format(s), key, s);
      } else if (key == "corruption") {
        const auto s = value.get<std::string>();
        c.corruption = parse_or_throw(parse_corruption(s), key, s);
      } else if (key == "fault_pointwise") {
        c.fault_pointwise = value.get<bool>();
      } else {
        throw Error(ErrorCode::ConfigError, key + ": unknown configuration key");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("config field has the wrong type: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ConfigError, "faults: expected a comma-separated list of integers");
  }
  return c;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COVERAGE_WORKERS"); env != nullptr && *env != '\0') {
    const std::uint64_t v = parse_u64(env, "COVERAGE_WORKERS");
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Campaigns

CoverageReport run_campaign(const CampaignConfig& config) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();

  const NttDomainParams params = named_params(config.params);
  const Residue alpha = config.alpha.value_or(default_alpha(config.scheme));
  const Residue beta = config.beta.value_or(default_beta(config.scheme));

  CoverageReport report;
  report.environment = {config.seed,   config.params,          alpha,
                        beta,          config.corruption,      config.fault_pointwise,
                        config.samples, std::string(kVersion)};

  TrialContext ctx{config.scheme,
                   config.mode,
                   0,
                   config.corruption,
                   params,
                   scheme_sites(config.scheme, params, config.fault_pointwise),
                   std::nullopt,
                   std::nullopt};
  if (config.scheme == Scheme::NwcPointwise) ctx.nwc_coding = CodingParams::make(params, alpha, beta);
  if (config.scheme == Scheme::KyberNtt) ctx.kyber_coding = KyberCodingParams::make(alpha, beta);

  const std::size_t workers = std::min(resolve_workers(config.workers), config.samples);

  for (const std::size_t faults : config.fault_counts) {
    ctx.faults = faults;
    const std::uint64_t row_seed =
        derive_seed(config.seed, {static_cast<std::uint64_t>(config.scheme),
                                  static_cast<std::uint64_t>(config.mode), faults});
    CoverageRow row;
    row.scheme = config.scheme;
    row.mode = config.mode;
    row.fault_count = faults;

    // Shard w takes trials w, w + W, w + 2W, ...; counts are summed afterwards.
    auto shard = [&](std::size_t w, CoverageRow& into) {
      for (std::size_t t = w; t < config.samples; t += workers) {
        accumulate(into, run_trial(ctx, derive_seed(row_seed, {t})));
      }
    };
    if (workers == 1) {
      shard(0, row);
    } else {
      std::vector<CoverageRow> partial(workers);
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back(shard, w, std::ref(partial[w]));
      }
      for (auto& th : threads) th.join();
      for (const auto& p : partial) add_counts(row, p);
    }
    report.rows.push_back(row);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

CoverageReport merge_reports(std::span<const CoverageReport> reports) {
  CoverageReport out;
  if (reports.empty()) return out;
  out.environment = reports.front().environment;
  for (const auto& r : reports) {
    if (!(r.environment == out.environment)) {
      throw Error(ErrorCode::ConfigError, "cannot merge reports with different environments");
    }
    out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
    out.wall_seconds += r.wall_seconds;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

std::string render_report(const CoverageReport& report, ReportFormat format,
                          EmitOptions options) {
  const auto& env = report.environment;
  std::ostringstream os;
  switch (format) {
    case ReportFormat::Csv: {
      os << "scheme,mode,fault_count,samples,detected,ratio,seed\n";
      for (const auto& r : report.rows) {
        os << to_string(r.scheme) << ',' << to_string(r.mode) << ',' << r.fault_count << ','
           << r.effective() << ',' << r.detected << ',' << format_double(r.ratio()) << ','
           << env.seed << '\n';
      }
      break;
    }
    case ReportFormat::Json: {
      ordered_json j;
      j["environment"] = {{"seed", env.seed},
                          {"params", env.params},
                          {"alpha", env.alpha},
                          {"beta", env.beta},
                          {"corruption", std::string(to_string(env.corruption))},
                          {"fault_pointwise", env.fault_pointwise},
                          {"samples", env.samples},
                          {"library_version", env.library_version}};
      j["rows"] = ordered_json::array();
      for (const auto& r : report.rows) {
        j["rows"].push_back({{"scheme", std::string(to_string(r.scheme))},
                             {"mode", std::string(to_string(r.mode))},
                             {"fault_count", r.fault_count},
                             {"samples", r.effective()},
                             {"detected", r.detected},
                             {"ratio", r.ratio()},
                             {"seed", env.seed},
                             {"trials", r.trials},
                             {"missed", r.missed},
                             {"cancelled", r.cancelled},
                             {"false_alarms", r.false_alarms},
                             {"mean_corrupted_sites", r.mean_corrupted_sites()}});
      }
      if (options.include_timing) j["wall_seconds"] = report.wall_seconds;
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Markdown: {
      // Columns per (scheme, mode) group in order of first appearance.
      std::vector<std::pair<Scheme, FaultMode>> groups;
      std::map<std::pair<Scheme, FaultMode>, std::vector<const CoverageRow*>> by_group;
      for (const auto& r : report.rows) {
        const auto key = std::make_pair(r.scheme, r.mode);
        if (!by_group.contains(key)) groups.push_back(key);
        by_group[key].push_back(&r);
      }
      bool shared_ladder = true;
      std::size_t depth = 0;
      for (const auto& g : groups) {
        const auto& rows = by_group[g];
        depth = std::max(depth, rows.size());
        const auto& first = by_group[groups.front()];
        if (rows.size() != first.size()) {
          shared_ladder = false;
          continue;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i]->fault_count != first[i]->fault_count) shared_ladder = false;
        }
      }
      os << '|';
      if (shared_ladder) os << " Faults |";
      for (const auto& g : groups) {
        if (!shared_ladder) os << ' ' << group_label(g.first, g.second) << " faults |";
        os << ' ' << group_label(g.first, g.second) << " |";
      }
      os << "\n|";
      const std::size_t cols = groups.size() * (shared_ladder ? 1 : 2) + (shared_ladder ? 1 : 0);
      for (std::size_t c = 0; c < cols; ++c) os << " ---: |";
      os << '\n';
      for (std::size_t i = 0; i < depth; ++i) {
        os << '|';
        if (shared_ladder) os << ' ' << by_group[groups.front()][i]->fault_count << " |";
        for (const auto& g : groups) {
          const auto& rows = by_group[g];
          if (i < rows.size()) {
            if (!shared_ladder) os << ' ' << rows[i]->fault_count << " |";
            os << ' ' << format_percent(rows[i]->ratio()) << " |";
          } else {
            os << (shared_ladder ? "  |" : "  |  |");
          }
        }
        os << '\n';
      }
      os << '\n' << environment_line(env) << '\n';
      if (options.include_timing) {
        os << "wall time: " << format_double(report.wall_seconds) << " s\n";
      }
      break;
    }
  }
  return os.str();
}

void emit_report(const CoverageReport& report, ReportFormat format,
                 const std::filesystem::path& destination, EmitOptions options) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + destination.string() + " for writing");
  out << render_report(report, format, options);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + destination.string() + " failed");
}

std::string render_sensitivity_markdown(std::span<const CoverageReport> reports) {
  std::ostringstream os;
  if (reports.empty()) return {};
  os << "| Scheme | Mode | Faults |";
  for (const auto& r : reports) os << ' ' << to_string(r.environment.corruption) << " |";
  os << "\n| --- | --- | ---: |";
  for (std::size_t i = 0; i < reports.size(); ++i) os << " ---: |";
  os << '\n';
  const auto& base = reports.front().rows;
  for (std::size_t i = 0; i < base.size(); ++i) {
    os << "| " << to_string(base[i].scheme) << " | " << to_string(base[i].mode) << " | "
       << base[i].fault_count << " |";
    for (const auto& r : reports) {
      const auto it = std::find_if(r.rows.begin(), r.rows.end(), [&](const CoverageRow& row) {
        return row.scheme == base[i].scheme && row.mode == base[i].mode &&
               row.fault_count == base[i].fault_count;
      });
      os << ' ' << (it == r.rows.end() ? std::string("-") : format_percent(it->ratio())) << " |";
    }
    os << '\n';
  }
  return os.str();
}

std::vector<ReportRecord> parse_csv_report(std::string_view text) {
  std::vector<ReportRecord> out;
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != "scheme,mode,fault_count,samples,detected,ratio,seed") {
    throw Error(ErrorCode::ConfigError, "CSV report header not recognised");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 7) throw Error(ErrorCode::ConfigError, "CSV row has " + std::to_string(f.size()) + " fields");
    out.push_back({f[0], f[1], static_cast<std::size_t>(parse_u64(f[2], "fault_count")),
                   parse_u64(f[3], "samples"), parse_u64(f[4], "detected"), parse_double(f[5]),
                   parse_u64(f[6], "seed")});
  }
  return out;
}

std::vector<ReportRecord> parse_json_report(std::string_view text) {
  std::vector<ReportRecord> out;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& r : j.at("rows")) {
      out.push_back({r.at("scheme").get<std::string>(), r.at("mode").get<std::string>(),
                     r.at("fault_count").get<std::size_t>(), r.at("samples").get<std::uint64_t>(),
                     r.at("detected").get<std::uint64_t>(), r.at("ratio").get<double>(),
                     r.at("seed").get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("JSON report not recognised: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overhead

StageTallies closed_form_op_count(Scheme scheme, std::size_t n, Residue alpha) {
  const std::uint64_t nn = n;
  const std::uint64_t scalings_per_input = alpha == 1 ? nn : 2 * nn;
  StageTallies t;
  switch (scheme) {
    case Scheme::KyberNtt:
      t.encoder = {nn, 0, scalings_per_input};
      t.decoder = {nn, 2 * nn, 0};
      t.checksum = {(nn - 1) + 1, 0, 1};
      break;
    case Scheme::NwcPointwise:
      t.encoder = {2 * nn, 0, 2 * scalings_per_input};
      t.decoder = {0, nn, 0};
      t.checksum = {2 * (nn - 1), 1, 0};
      break;
    case Scheme::NwcPreprocess:
      t.checksum = {0, nn, 0};
      break;
  }
  return t;
}

OpCountSummary static_op_count(Scheme scheme, std::string_view params_name,
                               std::optional<Residue> alpha_opt, std::optional<Residue> beta_opt) {
  const NttDomainParams params = named_params(params_name);
  const Residue alpha = alpha_opt.value_or(default_alpha(scheme));
  const Residue beta = beta_opt.value_or(default_beta(scheme));
  OpCountSummary s;
  s.closed_form = closed_form_op_count(scheme, params.n(), alpha);
  Engine rng(derive_seed(0x5eedULL, {static_cast<std::uint64_t>(scheme)}));
  switch (scheme) {
    case Scheme::KyberNtt: {
      if (params.q() != kKyberQ) throw Error(ErrorCode::ConfigError, "kyber requires params=kyber");
      (void)protected_kyber_ntt(random_kyber(rng), KyberCodingParams::make(alpha, beta), nullptr,
                                &s.measured);
      s.base_butterflies = kKyberButterflies;
      break;
    }
    case Scheme::NwcPointwise: {
      params.require_psi();
      const auto f = random_poly(rng, params.n(), params.q());
      const auto g = random_poly(rng, params.n(), params.q());
      (void)protected_nwc_pointwise(f, g, params, CodingParams::make(params, alpha, beta), nullptr,
                                    &s.measured);
      s.base_butterflies = 2 * butterfly_count(params.n());
      break;
    }
    case Scheme::NwcPreprocess: {
      params.require_psi();
      (void)preprocess_reso_check(random_poly(rng, params.n(), params.q()), params, nullptr, 1,
                                  &s.measured.checksum);
      break;
    }
  }
  return s;
}

OverheadSummary benchmark_overhead(Scheme scheme, std::string_view params_name,
                                   std::size_t iterations) {
  if (iterations == 0) throw Error(ErrorCode::ConfigError, "iters: must be >= 1");
  CampaignConfig probe;
  probe.scheme = scheme;
  probe.params = std::string(params_name);
  probe.samples = 1;
  validate_config(probe);

  const NttDomainParams params = named_params(params_name);
  OverheadSummary out;
  out.scheme = scheme;
  out.iterations = iterations;
  out.ops = static_op_count(scheme, params_name);

  Engine rng(derive_seed(0xb0bULL, {static_cast<std::uint64_t>(scheme)}));
  std::uint64_t sink = 0;
  auto time_ns = [&](auto&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < iterations; ++i) sink += body();
    const auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::nano>(dt).count() / static_cast<double>(iterations);
  };

  switch (scheme) {
    case Scheme::KyberNtt: {
      const KyberPoly f = random_kyber(rng);
      const auto coding = KyberCodingParams::make();
      out.baseline_ns = time_ns([&] { return kyber_ntt(f).coeffs[1]; });
      out.protected_ns = time_ns([&] { return protected_kyber_ntt(f, coding).spectrum.coeffs[1]; });
      break;
    }
    case Scheme::NwcPointwise: {
      const auto f = random_poly(rng, params.n(), params.q());
      const auto g = random_poly(rng, params.n(), params.q());
      const auto coding = CodingParams::make(params);
      out.baseline_ns = time_ns([&] {
        const auto fh = ntt_forward(pre_process(f, params), params);
        const auto gh = ntt_forward(pre_process(g, params), params);
        return pointwise_mul(fh, gh, params.q()).values[1];
      });
      out.protected_ns = time_ns([&] {
        return protected_nwc_pointwise(f, g, params, coding).product.values[1];
      });
      break;
    }
    case Scheme::NwcPreprocess: {
      const auto f = random_poly(rng, params.n(), params.q());
      out.baseline_ns = time_ns([&] { return pre_process(f, params)[1]; });
      out.protected_ns = time_ns([&] { return preprocess_reso_check(f, params).output[1]; });
      break;
    }
  }
  if (sink == 0xffffffffffffffffULL) std::fputs("", stderr);
  return out;
}

}  // namespace nttfd
