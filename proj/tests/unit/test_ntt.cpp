#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "nttfd/errors.hpp"
#include "nttfd/ntt.hpp"

namespace {

using namespace nttfd;
using V = std::vector<Residue>;

// n = 2, q = 17, omega = 16, psi = 4.
NttDomainParams tiny() { return validate_params({2, 17, 16, 4}, true); }

PolyZq poly(V v, Modulus q) { return PolyZq(std::move(v), q); }

TEST(NttForward, ToyExamples) {
  const auto p = toy_params();
  EXPECT_EQ(ntt_forward(poly({1, 0, 0, 0}, 17), p).values, poly({1, 1, 1, 1}, 17));
  EXPECT_EQ(ntt_forward(poly({0, 1, 0, 0}, 17), p).values, poly({1, 4, 16, 13}, 17));
  EXPECT_EQ(ntt_forward(PolyZq::zero(4, 17), p).values, PolyZq::zero(4, 17));
  EXPECT_EQ(ntt_forward(PolyZq::zero(256, 7681), round1_params()).values, PolyZq::zero(256, 7681));
}

TEST(NttForward, ButterflyCount) {
  EXPECT_EQ(butterfly_count(256), 1024u);
  EXPECT_EQ(butterfly_count(4), 4u);
  struct Counter {
    std::size_t calls = 0;
    std::size_t max_index = 0;
    Residue operator()(std::size_t i, FaultPosition, Residue v) {
      ++calls;
      max_index = std::max(max_index, i);
      return v;
    }
  } counter;
  V a(256, 1);
  ntt_forward_kernel(std::span<Residue>(a), round1_params(), counter);
  EXPECT_EQ(counter.calls, 3 * 1024u);
  EXPECT_EQ(counter.max_index + 1, 1024u);
}

TEST(NttForward, MatchesDirectDefinitionAndMatrixOracle) {
  std::mt19937_64 rng(11);
  for (const auto& p : {toy_params(), round1_params(), kyber_params()}) {
    const auto theta = NttMatrixOracle::theta(p);
    for (int t = 0; t < 20; ++t) {
      const auto f = oracle::random_poly(rng, p.n(), p.q());
      const auto fast = ntt_forward(f, p);
      ASSERT_EQ(fast.ordering, Ordering::Natural);
      EXPECT_EQ(oracle::to_vec(fast.values), oracle::direct_dft(oracle::to_vec(f), p.omega(), p.q()));
      EXPECT_EQ(fast.values, ntt_matrix_oracle(f, theta));
    }
  }
}

TEST(NttForward, BitReversedOrderingIsAPermutation) {
  std::mt19937_64 rng(12);
  const auto p = round1_params();
  const auto f = oracle::random_poly(rng, 256, 7681);
  const auto nat = ntt_forward(f, p);
  const auto rev = ntt_forward(f, p, Ordering::BitReversed);
  EXPECT_EQ(rev.ordering, Ordering::BitReversed);
  for (std::uint32_t k = 0; k < 256; ++k) EXPECT_EQ(rev.values[bit_reverse(k, 8)], nat.values[k]);
  EXPECT_EQ(reorder(rev, Ordering::Natural), nat);
  EXPECT_EQ(reorder(reorder(nat, Ordering::BitReversed), Ordering::Natural), nat);
}

TEST(NttForward, Linearity) {
  std::mt19937_64 rng(13);
  const auto p = round1_params();
  const Modulus q = p.q();
  for (int t = 0; t < 50; ++t) {
    const auto f = oracle::random_poly(rng, 256, q);
    const auto g = oracle::random_poly(rng, 256, q);
    const Residue a = static_cast<Residue>(rng() % q), b = static_cast<Residue>(rng() % q);
    V comb(256);
    for (std::size_t i = 0; i < 256; ++i) comb[i] = mod_add(mod_mul(a, f[i], q), mod_mul(b, g[i], q), q);
    const auto lhs = ntt_forward(poly(comb, q), p).values;
    const auto F = ntt_forward(f, p).values, G = ntt_forward(g, p).values;
    for (std::size_t k = 0; k < 256; ++k) {
      ASSERT_EQ(lhs[k], mod_add(mod_mul(a, F[k], q), mod_mul(b, G[k], q), q));
    }
  }
}

TEST(NttForward, ShapeErrors) {
  EXPECT_THROW((void)ntt_forward(PolyZq::zero(8, 17), toy_params()), Error);
  EXPECT_THROW((void)ntt_forward(PolyZq::zero(4, 13), toy_params()), Error);
}

TEST(NttInverse, Examples) {
  const auto p = toy_params();
  EXPECT_EQ(ntt_inverse({poly({1, 1, 1, 1}, 17), Ordering::Natural}, p), poly({1, 0, 0, 0}, 17));
  EXPECT_EQ(ntt_inverse({PolyZq::zero(4, 17), Ordering::Natural}, p), PolyZq::zero(4, 17));
}

TEST(NttInverse, RoundTripExhaustiveToy) {
  const auto p = toy_params();
  V f(4);
  for (Residue a = 0; a < 17; ++a)
    for (Residue b = 0; b < 17; ++b)
      for (Residue c = 0; c < 17; ++c)
        for (Residue d = 0; d < 17; ++d) {
          f = {a, b, c, d};
          const auto x = poly(f, 17);
          ASSERT_EQ(ntt_inverse(ntt_forward(x, p), p), x);
          ASSERT_EQ(ntt_inverse(ntt_forward(x, p, Ordering::BitReversed), p), x);
        }
}

TEST(NttInverse, RoundTripRandom) {
  std::mt19937_64 rng(14);
  for (const auto& p : {round1_params(), kyber_params()}) {
    for (int t = 0; t < 200; ++t) {
      const auto f = oracle::random_poly(rng, 256, p.q());
      ASSERT_EQ(ntt_inverse(ntt_forward(f, p), p), f);
    }
  }
}

TEST(PrePostProcess, Examples) {
  const auto p = tiny();
  EXPECT_EQ(pre_process(poly({1, 1}, 17), p), poly({1, 4}, 17));
  EXPECT_EQ(post_process(poly({1, 4}, 17), p), poly({1, 1}, 17));
  EXPECT_EQ(pre_process(PolyZq::zero(2, 17), p), PolyZq::zero(2, 17));
  EXPECT_EQ(post_process(PolyZq::zero(2, 17), p), PolyZq::zero(2, 17));

  V e(256, 0);
  e[255] = 1;
  const auto out = pre_process(poly(e, 7681), round1_params());
  EXPECT_EQ(out[255], oracle::slow_pow(62, 255, 7681));
  EXPECT_EQ(out[255], 6566u);
}

TEST(PrePostProcess, InverseAndErrors) {
  std::mt19937_64 rng(15);
  const auto p = round1_params();
  for (int t = 0; t < 50; ++t) {
    const auto f = oracle::random_poly(rng, 256, 7681);
    EXPECT_EQ(post_process(pre_process(f, p), p), f);
  }
  EXPECT_THROW((void)pre_process(PolyZq::zero(256, 3329), kyber_params()), Error);
  EXPECT_THROW((void)post_process(PolyZq::zero(4, 7681), p), Error);
}

TEST(PointwiseMul, Examples) {
  const NttOutput ones{poly({1, 1, 1, 1}, 17), Ordering::Natural};
  const NttOutput x{poly({3, 9, 0, 16}, 17), Ordering::Natural};
  const NttOutput zeros{PolyZq::zero(4, 17), Ordering::Natural};
  EXPECT_EQ(pointwise_mul(ones, x, 17), x);
  EXPECT_EQ(pointwise_mul(x, zeros, 17), zeros);
  EXPECT_EQ(pointwise_mul({poly({2, 3}, 17), Ordering::Natural}, {poly({3, 4}, 17), Ordering::Natural}, 17)
                .values,
            poly({6, 12}, 17));
}

TEST(PointwiseMul, Errors) {
  const NttOutput a{PolyZq::zero(4, 17), Ordering::Natural};
  const NttOutput b{PolyZq::zero(4, 17), Ordering::BitReversed};
  const NttOutput c{PolyZq::zero(2, 17), Ordering::Natural};
  try {
    (void)pointwise_mul(a, b, 17);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderingMismatch);
  }
  try {
    (void)pointwise_mul(a, c, 17);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(Schoolbook, Examples) {
  EXPECT_EQ(schoolbook_negacyclic(poly({0, 1}, 17), poly({0, 1}, 17), 17), poly({16, 0}, 17));
  const auto g = poly({3, 5, 7, 11}, 17);
  EXPECT_EQ(schoolbook_negacyclic(poly({1, 0, 0, 0}, 17), g, 17), g);
}

TEST(Schoolbook, MatchesSignedOracle) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 20; ++t) {
    const auto f = oracle::random_poly(rng, 256, 7681);
    const auto g = oracle::random_poly(rng, 256, 7681);
    EXPECT_EQ(oracle::to_vec(schoolbook_negacyclic(f, g, 7681)),
              oracle::negacyclic(oracle::to_vec(f), oracle::to_vec(g), 7681));
  }
}

TEST(NwcMultiply, Examples) {
  const auto p = tiny();
  EXPECT_EQ(nwc_multiply(poly({1, 1}, 17), poly({1, 1}, 17), p), poly({0, 2}, 17));
  EXPECT_EQ(nwc_multiply(poly({0, 1}, 17), poly({0, 1}, 17), p), poly({16, 0}, 17));
  std::mt19937_64 rng(17);
  V e(256, 0);
  e[0] = 1;
  const auto g = oracle::random_poly(rng, 256, 7681);
  EXPECT_EQ(nwc_multiply(poly(e, 7681), g, round1_params()), g);
}

TEST(NwcMultiply, ConvolutionTheoremRandom) {
  std::mt19937_64 rng(18);
  for (const auto& p : {round1_params(), toy_params()}) {
    for (int t = 0; t < 200; ++t) {
      const auto f = oracle::random_poly(rng, p.n(), p.q());
      const auto g = oracle::random_poly(rng, p.n(), p.q());
      ASSERT_EQ(oracle::to_vec(nwc_multiply(f, g, p)),
                oracle::negacyclic(oracle::to_vec(f), oracle::to_vec(g), p.q()));
    }
  }
  EXPECT_THROW((void)nwc_multiply(PolyZq::zero(256, 3329), PolyZq::zero(256, 3329), kyber_params()),
               Error);
}

TEST(MatrixOracle, ImpulseGivesFirstColumn) {
  const auto p = toy_params();
  const auto theta = NttMatrixOracle::theta(p);
  const auto out = ntt_matrix_oracle(poly({1, 0, 0, 0}, 17), theta);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[i], theta.at(i, 0));
  EXPECT_THROW((void)ntt_matrix_oracle(PolyZq::zero(2, 17), theta), Error);
}

TEST(MatrixOracle, RotationIdentity) {
  // NTT of the left rotation equals rho applied to f, and equals the plain
  // spectrum scaled by omega^k.
  std::mt19937_64 rng(19);
  const auto p = round1_params();
  const auto rho = NttMatrixOracle::rho(p);
  for (int t = 0; t < 10; ++t) {
    const auto f = oracle::random_poly(rng, 256, 7681);
    const auto rotated = ntt_forward(rotate_left(f, 1), p).values;
    const auto plain = ntt_forward(f, p).values;
    for (std::size_t k = 0; k < 256; ++k) {
      ASSERT_EQ(mod_mul(rotated[k], p.omega_powers()[k], 7681), plain[k]);
    }
    EXPECT_EQ(ntt_matrix_oracle(rotate_left(f, 1), rho),
              ntt_matrix_oracle(f, NttMatrixOracle::theta(p)));
  }
}

TEST(RotateLeft, Definition) {
  EXPECT_EQ(rotate_left(poly({1, 2, 3, 4}, 17), 1), poly({2, 3, 4, 1}, 17));
  EXPECT_EQ(rotate_left(poly({1, 2, 3, 4}, 17), 4), poly({1, 2, 3, 4}, 17));
}

}  // namespace
