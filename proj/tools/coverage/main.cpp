#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nttfd/campaign.hpp"
#include "nttfd/errors.hpp"
#include "nttfd/version.hpp"

namespace {

constexpr int kConfigExit = 2;

struct RunFlags {
  std::string config_path;
  std::string scheme;
  std::string mode;
  std::vector<std::size_t> faults;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string params;
  nttfd::Residue alpha = 1;
  nttfd::Residue beta = 1;
  std::string format;
  std::string corruption;
  bool fault_pointwise = false;
  bool timing = false;
  std::string out;
};

template <class T>
T parse_named(std::optional<T> value, const char* field, const std::string& text) {
  if (!value) {
    throw nttfd::Error(nttfd::ErrorCode::ConfigError,
                       std::string(field) + ": unrecognised value '" + text + "'");
  }
  return *value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nttfd::Error(nttfd::ErrorCode::ConfigError, "config: cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Config file first, then every flag given on the command line on top.
nttfd::CampaignConfig build_config(const CLI::App& cmd, const RunFlags& f) {
  nttfd::CampaignConfig c;
  if (!f.config_path.empty()) c = nttfd::parse_config_json(read_file(f.config_path));
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--scheme")) c.scheme = parse_named(nttfd::parse_scheme(f.scheme), "scheme", f.scheme);
  if (given("--mode")) c.mode = parse_named(nttfd::parse_mode(f.mode), "mode", f.mode);
  if (given("--faults")) c.fault_counts = f.faults;
  if (given("--samples")) c.samples = f.samples;
  if (given("--seed")) c.seed = f.seed;
  if (given("--params")) c.params = f.params;
  if (given("--alpha")) c.alpha = f.alpha;
  if (given("--beta")) c.beta = f.beta;
  if (given("--format")) c.format = parse_named(nttfd::parse_format(f.format), "format", f.format);
  if (given("--corruption")) {
    c.corruption = parse_named(nttfd::parse_corruption(f.corruption), "corruption", f.corruption);
  }
  if (given("--fault-pointwise")) c.fault_pointwise = f.fault_pointwise;
  // NWC schemes without an explicit parameter set run on round1.
  if (!given("--params") && f.config_path.empty() && c.scheme != nttfd::Scheme::KyberNtt) {
    c.params = "round1";
  }
  return c;
}

int run_command(const CLI::App& cmd, const RunFlags& f) {
  const nttfd::CampaignConfig config = build_config(cmd, f);
  const nttfd::CoverageReport report = nttfd::run_campaign(config);
  const nttfd::EmitOptions options{f.timing};
  if (f.out.empty() || f.out == "-") {
    std::cout << nttfd::render_report(report, config.format, options);
  } else {
    nttfd::emit_report(report, config.format, f.out, options);
  }
  return 0;
}

int bench_command(const std::string& scheme_text, const std::string& params_text,
                  std::size_t iters) {
  const auto scheme = parse_named(nttfd::parse_scheme(scheme_text), "scheme", scheme_text);
  std::string params = params_text;
  if (params.empty()) params = scheme == nttfd::Scheme::KyberNtt ? "kyber" : "round1";
  const nttfd::OverheadSummary s = nttfd::benchmark_overhead(scheme, params, iters);
  const auto& m = s.ops.measured;
  std::printf("scheme %s, params %s, %zu iterations\n", std::string(nttfd::to_string(scheme)).c_str(),
              params.c_str(), s.iterations);
  std::printf("baseline   %12.1f ns\n", s.baseline_ns);
  std::printf("protected  %12.1f ns\n", s.protected_ns);
  std::printf("overhead   %+11.1f %%\n", 100.0 * s.overhead());
  std::printf("detection ops per execution (adds / mults / scalings):\n");
  auto line = [](const char* stage, const nttfd::OpTally& t) {
    std::printf("  %-9s %6llu / %6llu / %6llu\n", stage,
                static_cast<unsigned long long>(t.additions),
                static_cast<unsigned long long>(t.multiplications),
                static_cast<unsigned long long>(t.scalings));
  };
  line("encoder", m.encoder);
  line("decoder", m.decoder);
  line("checksum", m.checksum);
  line("total", m.total());
  std::printf("closed form %s\n", m == s.ops.closed_form ? "matches" : "DIFFERS");
  if (s.ops.base_butterflies != 0) {
    std::printf("base transform butterflies: %llu\n",
                static_cast<unsigned long long>(s.ops.base_butterflies));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-detection coverage campaigns for NTT polynomial multiplication"};
  app.set_version_flag("--version", std::string(nttfd::kVersion));
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand("run", "Run a Monte-Carlo coverage campaign");
  run->add_option("--config", flags.config_path, "JSON file with campaign fields; flags override it");
  run->add_option("--scheme", flags.scheme, "nwc-mult | nwc-pre | kyber");
  run->add_option("--mode", flags.mode, "normal | burst");
  run->add_option("--faults", flags.faults, "Fault counts, e.g. 1,2,4,8,16")->delimiter(',');
  run->add_option("--samples", flags.samples, "Trials per fault count");
  run->add_option("--seed", flags.seed, "Base seed");
  run->add_option("--params", flags.params, "round1 | kyber");
  run->add_option("--alpha", flags.alpha, "Encoder scalar alpha");
  run->add_option("--beta", flags.beta, "Encoder scalar beta");
  run->add_option("--format", flags.format, "csv | json | md");
  run->add_option("--corruption", flags.corruption, "additive | bitflip | add-one");
  run->add_flag("--fault-pointwise", flags.fault_pointwise,
                "Also fault the pointwise multipliers (nwc-mult)");
  run->add_flag("--timing", flags.timing, "Include wall time in the report");
  run->add_option("--out", flags.out, "Output path; stdout when omitted");

  std::string bench_scheme = "kyber";
  std::string bench_params;
  std::size_t bench_iters = 1000;
  CLI::App* bench = app.add_subcommand("bench", "Time the protected path against the plain one");
  bench->add_option("--scheme", bench_scheme, "nwc-mult | nwc-pre | kyber");
  bench->add_option("--params", bench_params, "round1 | kyber");
  bench->add_option("--iters", bench_iters, "Iterations per timed loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (run->parsed()) return run_command(*run, flags);
    return bench_command(bench_scheme, bench_params, bench_iters);
  } catch (const nttfd::Error& e) {
    std::cerr << "coverage: " << e.what() << '\n';
    if (e.code() == nttfd::ErrorCode::ConfigError) return kConfigExit;
    return 1;
  }
}
