#include <benchmark/benchmark.h>

#include <vector>

#include "nttfd/detect_kyber.hpp"
#include "nttfd/detect_nwc.hpp"
#include "nttfd/kyber.hpp"
#include "nttfd/ntt.hpp"
#include "nttfd/rng.hpp"

namespace {

nttfd::PolyZq random_poly(const nttfd::NttDomainParams& p, std::uint64_t seed) {
  nttfd::Engine rng(seed);
  std::vector<nttfd::Residue> c(p.n());
  for (auto& x : c) x = static_cast<nttfd::Residue>(nttfd::uniform_below(rng, p.q()));
  return nttfd::PolyZq(std::move(c), p.q());
}

nttfd::KyberPoly random_kyber(std::uint64_t seed) {
  nttfd::Engine rng(seed);
  nttfd::KyberPoly f;
  for (auto& x : f.coeffs) x = static_cast<nttfd::Residue>(nttfd::uniform_below(rng, nttfd::kKyberQ));
  return f;
}

void BM_NttForward(benchmark::State& state) {
  const auto& p = nttfd::round1_params();
  const auto f = random_poly(p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::ntt_forward(f, p));
}
BENCHMARK(BM_NttForward);

void BM_NwcMultiply(benchmark::State& state) {
  const auto& p = nttfd::round1_params();
  const auto f = random_poly(p, 2);
  const auto g = random_poly(p, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::nwc_multiply(f, g, p));
}
BENCHMARK(BM_NwcMultiply);

void BM_ProtectedNwcPointwise(benchmark::State& state) {
  const auto& p = nttfd::round1_params();
  const auto f = random_poly(p, 2);
  const auto g = random_poly(p, 3);
  const auto coding = nttfd::CodingParams::make(p);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::protected_nwc_pointwise(f, g, p, coding));
}
BENCHMARK(BM_ProtectedNwcPointwise);

void BM_PreProcess(benchmark::State& state) {
  const auto& p = nttfd::round1_params();
  const auto f = random_poly(p, 4);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::pre_process(f, p));
}
BENCHMARK(BM_PreProcess);

void BM_PreProcessReso(benchmark::State& state) {
  const auto& p = nttfd::round1_params();
  const auto f = random_poly(p, 4);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::preprocess_reso_check(f, p));
}
BENCHMARK(BM_PreProcessReso);

void BM_KyberNtt(benchmark::State& state) {
  const auto f = random_kyber(5);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::kyber_ntt(f));
}
BENCHMARK(BM_KyberNtt);

void BM_ProtectedKyberNtt(benchmark::State& state) {
  const auto f = random_kyber(5);
  const auto coding = nttfd::KyberCodingParams::make();
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::protected_kyber_ntt(f, coding));
}
BENCHMARK(BM_ProtectedKyberNtt);

void BM_KyberPolyMul(benchmark::State& state) {
  const auto f = random_kyber(6);
  const auto g = random_kyber(7);
  for (auto _ : state) benchmark::DoNotOptimize(nttfd::kyber_poly_mul(f, g));
}
BENCHMARK(BM_KyberPolyMul);

}  // namespace

BENCHMARK_MAIN();
