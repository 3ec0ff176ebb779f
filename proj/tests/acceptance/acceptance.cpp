// Acceptance gate. Each criterion prints detail lines indented by two spaces
// and exactly one verdict line of the form "criterion N: PASS|FAIL <summary>".
//
//   acceptance                  run all criteria
//   acceptance --criterion N    run criterion N only
//   acceptance --samples S      override the campaign sample count (default 100000)
//   acceptance --out DIR        where campaign reports are written (default .)

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "nttfd/campaign.hpp"
#include "nttfd/detect_kyber.hpp"
#include "nttfd/detect_nwc.hpp"
#include "nttfd/kyber.hpp"
#include "nttfd/ntt.hpp"

namespace {

using namespace nttfd;
using Clock = std::chrono::steady_clock;

struct Options {
  int criterion = 0;
  std::size_t samples = 100000;
  std::filesystem::path out = ".";
};

Options g_opts;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool verdict(int n, bool pass, const std::string& summary) {
  std::printf("criterion %d: %s %s\n", n, pass ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  return pass;
}

// 1 ------------------------------------------------------------------------

bool criterion_oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xC1);
  std::size_t mismatches = 0;
  std::size_t checked = 0;

  auto check_nwc = [&](const PolyZq& f, const PolyZq& g, const NttDomainParams& p) {
    const auto expect = oracle::negacyclic(oracle::to_vec(f), oracle::to_vec(g), p.q());
    mismatches += oracle::to_vec(nwc_multiply(f, g, p)) != expect;
    mismatches += oracle::to_vec(schoolbook_negacyclic(f, g, p.q())) != expect;
    ++checked;
  };
  auto check_kyber = [&](const KyberPoly& f, const KyberPoly& g) {
    const auto expect = oracle::negacyclic(oracle::to_vec(f.coeffs), oracle::to_vec(g.coeffs), 3329);
    mismatches += oracle::to_vec(kyber_poly_mul(f, g).coeffs) != expect;
    ++checked;
  };

  for (const auto& p : {round1_params(), toy_params()}) {
    for (int t = 0; t < 1000; ++t) {
      check_nwc(oracle::random_poly(rng, p.n(), p.q()), oracle::random_poly(rng, p.n(), p.q()), p);
    }
    const auto zero = PolyZq::zero(p.n(), p.q());
    const auto g = oracle::random_poly(rng, p.n(), p.q());
    check_nwc(zero, g, p);
    for (std::size_t i = 0; i < p.n(); i += (p.n() > 8 ? 37 : 1)) {
      std::vector<Residue> e(p.n(), 0);
      e[i] = 1;
      check_nwc(PolyZq(e, p.q()), g, p);
      e[i] = p.q() - 1;
      check_nwc(PolyZq(e, p.q()), PolyZq(e, p.q()), p);
    }
  }
  for (int t = 0; t < 1000; ++t) check_kyber(oracle::random_kyber(rng), oracle::random_kyber(rng));
  const auto gk = oracle::random_kyber(rng);
  check_kyber(KyberPoly{}, gk);
  for (std::size_t i = 0; i < 256; i += 37) {
    KyberPoly e;
    e.coeffs[i] = 1;
    check_kyber(e, gk);
    e.coeffs[i] = 3328;
    check_kyber(e, e);
  }

  const double secs = seconds_since(t0);
  std::printf("  %zu products checked, %zu mismatches, %.2f s\n", checked, mismatches, secs);
  return verdict(1, mismatches == 0 && secs < 10.0,
                 "oracle equivalence (round1, toy and kyber products vs signed schoolbook, < 10 s)");
}

// 2 ------------------------------------------------------------------------

bool criterion_encoding_identities() {
  std::mt19937_64 rng(0xC2);
  const auto p = round1_params();
  const auto c = CodingParams::make(p);
  const auto kc = KyberCodingParams::make();
  std::size_t nwc_bad = 0, kyber_bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto f = oracle::random_poly(rng, 256, 7681);
    nwc_bad += decode_spectrum(ntt_forward(encode_shift_combine(f, c), p), c, 1) != ntt_forward(f, p);
    const auto fk = oracle::random_kyber(rng);
    kyber_bad += decode_kyber(kyber_ntt(encode_kyber(fk, kc)), fk.coeffs[0], fk.coeffs[1], kc) != kyber_ntt(fk);
  }
  std::printf("  nwc (alpha=%u, beta=%u): %zu of 10000 differ\n", c.alpha(), c.beta(), nwc_bad);
  std::printf("  kyber (alpha=%u, beta=%u): %zu of 10000 differ\n", kc.alpha(), kc.beta(), kyber_bad);
  return verdict(2, nwc_bad == 0 && kyber_bad == 0,
                 "encoding identities, exact on 10^4 random inputs per scheme");
}

// 3 ------------------------------------------------------------------------

bool criterion_checksum_soundness() {
  std::mt19937_64 rng(0xC3);
  const auto p = round1_params();
  const auto c = CodingParams::make(p);
  const auto kc = KyberCodingParams::make();
  std::size_t nwc_fp = 0, kyber_fp = 0, reso_fp = 0;
  constexpr int kTrials = 100000;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_poly(rng, 256, 7681);
    const auto g = oracle::random_poly(rng, 256, 7681);
    nwc_fp += protected_nwc_pointwise(f, g, p, c).verdict.flagged;
    reso_fp += preprocess_reso_check(f, p).verdict.flagged;
    kyber_fp += protected_kyber_ntt(oracle::random_kyber(rng), kc).verdict.flagged;
  }
  std::printf("  false positives over %d fault-free trials: nwc %zu, kyber %zu, pre-process %zu\n",
              kTrials, nwc_fp, kyber_fp, reso_fp);
  return verdict(3, nwc_fp == 0 && kyber_fp == 0 && reso_fp == 0,
                 "checksum soundness, zero false positives on 10^5 fault-free runs");
}

// 4 / 5 helpers --------------------------------------------------------------

struct Band {
  std::size_t faults;
  double target;  // percent
};

CampaignConfig campaign(Scheme s, FaultMode m, const std::vector<Band>& ladder,
                        CorruptionKind k = CorruptionKind::AdditiveUniform) {
  CampaignConfig c;
  c.scheme = s;
  c.mode = m;
  c.samples = g_opts.samples;
  c.params = s == Scheme::KyberNtt ? "kyber" : "round1";
  c.corruption = k;
  c.fault_counts.clear();
  for (const auto& b : ladder) c.fault_counts.push_back(b.faults);
  return c;
}

bool within(const CoverageReport& r, const std::vector<Band>& ladder, double tol, const char* label) {
  bool ok = true;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto& row = r.rows[i];
    const double got = 100.0 * row.ratio();
    const bool hit = std::fabs(got - ladder[i].target) <= tol;
    ok = ok && hit;
    std::printf("  %-15s F=%-2zu measured %7.3f%%  target %6.2f%% +/- %.0f  %s  (effective %llu, cancelled %llu)\n",
                label, ladder[i].faults, got, ladder[i].target, tol, hit ? "in band" : "OUT",
                static_cast<unsigned long long>(row.effective()),
                static_cast<unsigned long long>(row.cancelled));
  }
  return ok;
}

bool monotone(const CoverageReport& r) {
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (r.rows[i].ratio() + 1e-12 < r.rows[i - 1].ratio()) return false;
  }
  return true;
}

// 4 ------------------------------------------------------------------------

bool criterion_table1() {
  const auto t0 = Clock::now();
  const std::vector<Band> pre{{1, 99.7}, {2, 99.9}, {4, 100}, {8, 100}, {16, 100}};
  const std::vector<Band> mult{{1, 53}, {2, 70.6}, {4, 90.9}, {8, 99}, {16, 99.9}};
  const auto pre_r = run_campaign(campaign(Scheme::NwcPreprocess, FaultMode::Normal, pre));
  const auto mult_r = run_campaign(campaign(Scheme::NwcPointwise, FaultMode::Normal, mult));
  const std::vector<CoverageReport> both{pre_r, mult_r};
  std::printf("  samples per row %zu, nwc coding alpha=%u beta=%u\n", g_opts.samples,
              mult_r.environment.alpha, mult_r.environment.beta);
  const bool pre_ok = within(pre_r, pre, 1.0, "pre-process");
  const bool mult_ok = within(mult_r, mult, 5.0, "ntt-mult");
  const double secs = seconds_since(t0);
  std::printf("  monotone: pre-process %s, ntt-mult %s; %.1f s\n", monotone(pre_r) ? "yes" : "no",
              monotone(mult_r) ? "yes" : "no", secs);
  emit_report(pre_r, ReportFormat::Csv, g_opts.out / "table1_preprocess.csv");
  emit_report(mult_r, ReportFormat::Csv, g_opts.out / "table1_ntt_mult.csv");
  return verdict(4, pre_ok && mult_ok && secs < 600.0,
                 std::string("coverage ladder reproduction: pre-process ") + (pre_ok ? "in" : "OUT of") +
                     " +/-1 band, ntt-mult " + (mult_ok ? "in" : "OUT of") + " +/-5 band");
}

// 5 ------------------------------------------------------------------------

bool criterion_table2() {
  const std::vector<Band> normal{{1, 74.9}, {2, 93.45}, {4, 99.49}, {8, 99.95}, {16, 100}};
  const std::vector<Band> burst{{2, 93.82}, {3, 98.3}, {4, 99.42}, {5, 99.76}, {6, 99.8}};
  const auto n_r = run_campaign(campaign(Scheme::KyberNtt, FaultMode::Normal, normal));
  const auto b_r = run_campaign(campaign(Scheme::KyberNtt, FaultMode::Burst, burst));
  const bool n_ok = within(n_r, normal, 5.0, "kyber normal");
  const bool b_ok = within(b_r, burst, 5.0, "kyber burst");
  const std::vector<CoverageReport> additive{n_r, b_r};
  emit_report(merge_reports(additive), ReportFormat::Markdown, g_opts.out / "table2_additive.md");
  if (n_ok && b_ok) return verdict(5, true, "kyber coverage ladders inside the +/-5 bands");

  // Band missed: report the same campaigns under two further corruption models.
  std::vector<CoverageReport> models{merge_reports(additive)};
  bool complete = true;
  for (const auto k : {CorruptionKind::BitFlip, CorruptionKind::AddOne}) {
    const std::vector<CoverageReport> parts{
        run_campaign(campaign(Scheme::KyberNtt, FaultMode::Normal, normal, k)),
        run_campaign(campaign(Scheme::KyberNtt, FaultMode::Burst, burst, k))};
    models.push_back(merge_reports(parts));
    complete = complete && models.back().rows.size() == normal.size() + burst.size();
  }
  const auto table = render_sensitivity_markdown(models);
  std::printf("  band missed; corruption-model sensitivity:\n");
  std::size_t pos = 0;
  while (pos < table.size()) {
    const auto nl = table.find('\n', pos);
    std::printf("    %s\n", table.substr(pos, nl - pos).c_str());
    pos = nl + 1;
  }
  const auto path = g_opts.out / "table2_sensitivity.md";
  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (fp != nullptr) {
    std::fputs(table.c_str(), fp);
    std::fclose(fp);
  }
  std::printf("  sensitivity report written to %s\n", path.string().c_str());
  return verdict(5, complete && fp != nullptr,
                 "kyber ladders outside the +/-5 bands; fallback satisfied: ratios reported under "
                 "additive, bitflip and add-one corruption");
}

// 6 ------------------------------------------------------------------------

bool criterion_structural_counts() {
  struct Distinct {
    std::size_t count = 0;
    std::size_t last = SIZE_MAX;
    Residue operator()(std::size_t i, FaultPosition, Residue v) {
      if (i != last) ++count;
      last = i;
      return v;
    }
  };
  Distinct kyber;
  KyberCoeffs a{};
  kyber_ntt_kernel(std::span<Residue, kKyberN>(a), kyber);
  Distinct generic;
  std::vector<Residue> b(256, 0);
  ntt_forward_kernel(std::span<Residue>(b), round1_params(), generic);
  std::printf("  kyber butterflies %zu, generic n=256 butterflies %zu\n", kyber.count, generic.count);
  return verdict(6, kyber.count == 896 && generic.count == 1024, "butterfly counters 896 and 1024");
}

// 7 ------------------------------------------------------------------------

bool criterion_determinism() {
  bool ok = true;
  for (const auto s : {Scheme::NwcPointwise, Scheme::NwcPreprocess, Scheme::KyberNtt}) {
    for (const auto m : {FaultMode::Normal, FaultMode::Burst}) {
      CampaignConfig c;
      c.scheme = s;
      c.mode = m;
      c.samples = 2000;
      c.params = s == Scheme::KyberNtt ? "kyber" : "round1";
      c.workers = 1;
      const auto serial = run_campaign(c);
      const auto serial_again = run_campaign(c);
      c.workers = 4;
      const auto parallel = run_campaign(c);
      for (const auto f : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::Markdown}) {
        const auto ref = render_report(serial, f);
        const bool same = ref == render_report(serial_again, f) && ref == render_report(parallel, f);
        ok = ok && same;
        if (!same) {
          std::printf("  %s %s %s differs\n", std::string(to_string(s)).c_str(),
                      std::string(to_string(m)).c_str(), std::string(to_string(f)).c_str());
        }
      }
    }
  }
  std::printf("  6 campaigns x 3 formats compared: serial, serial re-run, 4 workers\n");
  return verdict(7, ok, "byte-identical reports across re-runs and worker counts");
}

// 8 ------------------------------------------------------------------------

bool criterion_op_counts() {
  bool ok = true;
  for (const auto s : {Scheme::KyberNtt, Scheme::NwcPointwise, Scheme::NwcPreprocess}) {
    const auto ops = static_op_count(s, s == Scheme::KyberNtt ? "kyber" : "round1");
    const auto& m = ops.measured;
    const bool same = m == ops.closed_form;
    ok = ok && same;
    std::printf("  %-8s encoder %llu+ %llux %llus, decoder %llu+ %llux, checksum %llu+ %llux %llus: %s\n",
                std::string(to_string(s)).c_str(), static_cast<unsigned long long>(m.encoder.additions),
                static_cast<unsigned long long>(m.encoder.multiplications),
                static_cast<unsigned long long>(m.encoder.scalings),
                static_cast<unsigned long long>(m.decoder.additions),
                static_cast<unsigned long long>(m.decoder.multiplications),
                static_cast<unsigned long long>(m.checksum.additions),
                static_cast<unsigned long long>(m.checksum.multiplications),
                static_cast<unsigned long long>(m.checksum.scalings),
                same ? "matches closed form" : "DIFFERS from closed form");
  }
  // Kyber decoder: two multiplications and one addition per slot.
  const auto k = static_op_count(Scheme::KyberNtt, "kyber").measured;
  const bool per_slot = k.decoder.multiplications == 2 * 256 && k.decoder.additions == 256 &&
                        k.encoder.additions == 256 && k.encoder.scalings == 256 &&
                        k.checksum.additions == 255 + 1;
  ok = ok && per_slot;
  std::printf("  kyber decoder per slot: %llu mults, %llu add\n",
              static_cast<unsigned long long>(k.decoder.multiplications / 256),
              static_cast<unsigned long long>(k.decoder.additions / 256));
  return verdict(8, ok, "static operation counts equal the closed form");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      g_opts.criterion = std::atoi(argv[++i]);
    } else if (a == "--samples" && i + 1 < argc) {
      g_opts.samples = static_cast<std::size_t>(std::strtoull(argv[++i], nullptr, 10));
    } else if (a == "--out" && i + 1 < argc) {
      g_opts.out = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--samples S] [--out DIR]\n");
      return 2;
    }
  }
  const std::array<std::function<bool()>, 8> criteria{
      criterion_oracle_equivalence, criterion_encoding_identities, criterion_checksum_soundness,
      criterion_table1,             criterion_table2,              criterion_structural_counts,
      criterion_determinism,        criterion_op_counts};
  if (g_opts.criterion < 0 || g_opts.criterion > 8) {
    std::fprintf(stderr, "criterion must be 1..8\n");
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= 8; ++n) {
    if (g_opts.criterion != 0 && g_opts.criterion != n) continue;
    try {
      all = criteria[static_cast<std::size_t>(n - 1)]() && all;
    } catch (const std::exception& e) {
      all = verdict(n, false, std::string("threw: ") + e.what()) && all;
    }
  }
  return all ? 0 : 1;
}
