#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "support.hpp"

using namespace ztdp;
using testkit::random_set_function;

namespace {

using SF = SetFunction<IntegerRing>;

SF constant(std::size_t r, int value) {
  IntegerRing ring;
  SF f(ring, r);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) f[x] = value;
  return f;
}

// ζf by the double loop over all pairs X ⊆ Y.
SF naive_zeta(const SF& f) {
  SF out(f.ring(), f.ground_size());
  for (std::uint32_t y = 0; y < f.table_size(); ++y)
    for (std::uint32_t x = 0; x < f.table_size(); ++x)
      if ((x & y) == x) out[y] += f[x];
  return out;
}

BigInt power(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

TEST(Zeta, Singleton) {
  IntegerRing ring;
  auto f = SF::singleton(ring, 4, 0b0101);
  auto z = zeta(f);
  for (std::uint32_t y = 0; y < 16; ++y) EXPECT_EQ(z[y], (y & 0b0101) == 0b0101 ? 1 : 0);
}

TEST(Zeta, ConstantOne) {
  auto z = zeta(constant(3, 1));
  for (std::uint32_t y = 0; y < 8; ++y) EXPECT_EQ(z[y], power(2, std::popcount(y)));
}

TEST(Zeta, MatchesDoubleLoop) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_set_function(IntegerRing{}, 6, rng);
    EXPECT_EQ(zeta(f), naive_zeta(f));
  }
}

TEST(Mobius, InvertsSingletonAndConstant) {
  IntegerRing ring;
  auto f = SF::singleton(ring, 3, 0b110);
  EXPECT_EQ(mobius(zeta(f)), f);
  auto m = mobius(constant(3, 1));
  EXPECT_EQ(m[0], 1);
  for (std::uint32_t y = 1; y < 8; ++y) EXPECT_EQ(m[y], 0);
}

TEST(Mobius, RoundTrips) {
  std::mt19937_64 rng(3);
  for (std::size_t r = 0; r <= 10; ++r) {
    auto f = random_set_function(IntegerRing{}, r, rng);
    EXPECT_EQ(mobius(zeta(f)), f);
    EXPECT_EQ(zeta(mobius(f)), f);
  }
}

TEST(SubsetConvolve, Examples) {
  auto ones = constant(4, 1);
  auto c = subset_convolve(ones, ones);
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(c[x], power(2, std::popcount(x)));

  std::mt19937_64 rng(4);
  auto g = random_set_function(IntegerRing{}, 4, rng);
  EXPECT_EQ(subset_convolve(SF::singleton(IntegerRing{}, 4, 0), g), g);
  EXPECT_THROW(subset_convolve(ones, constant(3, 1)), std::invalid_argument);
}

TEST(UnionProduct, Singletons) {
  IntegerRing ring;
  auto u = union_product(SF::singleton(ring, 4, 0b0011), SF::singleton(ring, 4, 0b0110));
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(u[x], x == 0b0111 ? 1 : 0);
  EXPECT_THROW(union_product(constant(2, 1), constant(3, 1)), std::invalid_argument);
}

TEST(UnionProduct, OnesCountCoveringPairs) {
  auto u = union_product(constant(4, 1), constant(4, 1));
  for (std::uint32_t x = 0; x < 16; ++x) {
    BigInt pairs = 0;
    for (std::uint32_t a = 0; a < 16; ++a)
      for (std::uint32_t b = 0; b < 16; ++b) pairs += (a | b) == x;
    EXPECT_EQ(u[x], pairs);
    EXPECT_EQ(u[x], power(3, std::popcount(x)));
  }
}

TEST(UnionProduct, ZetaTurnsItPointwise) {
  std::mt19937_64 rng(5);
  for (std::size_t r = 0; r <= 8; ++r) {
    auto f = random_set_function(IntegerRing{}, r, rng);
    auto g = random_set_function(IntegerRing{}, r, rng);
    EXPECT_EQ(zeta(union_product(f, g)), pointwise_product(zeta(f), zeta(g)));
  }
}

TEST(Relaxation, CanonicalExamples) {
  auto rel = canonical_relaxation(constant(2, 1));
  ASSERT_EQ(rel.size(), 3u);
  EXPECT_EQ(rel[0], SF::singleton(IntegerRing{}, 2, 0));
  EXPECT_EQ(rel[2], constant(2, 1));
  std::mt19937_64 rng(6);
  for (std::size_t r = 0; r <= 6; ++r) {
    auto f = random_set_function(IntegerRing{}, r, rng);
    auto c = canonical_relaxation(f);
    EXPECT_EQ(c.back(), f);
    EXPECT_TRUE(is_relaxation_of(c, f));
  }
}

TEST(Relaxation, RankTrickRecoversSubsetConvolution) {
  auto ones = canonical_relaxation(constant(3, 1));
  auto out = ranked_union_convolve(ones, ones);
  for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(out[std::popcount(x)][x], power(2, std::popcount(x)));

  IntegerRing ring;
  auto a = SF::singleton(ring, 3, 0b001), b = SF::singleton(ring, 3, 0b011);
  auto diag = ranked_union_convolve(canonical_relaxation(a), canonical_relaxation(b));
  auto direct = subset_convolve(a, b);
  for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(diag[std::popcount(x)][x], direct[x]);

  std::mt19937_64 rng(7);
  for (std::size_t r = 0; r <= 6; ++r) {
    auto f = random_set_function(ring, r, rng), g = random_set_function(ring, r, rng);
    auto rel = ranked_union_convolve(canonical_relaxation(f), canonical_relaxation(g));
    auto conv = subset_convolve(f, g);
    for (std::uint32_t x = 0; x < conv.table_size(); ++x) EXPECT_EQ(rel[std::popcount(x)][x], conv[x]);
    EXPECT_TRUE(is_relaxation_of(rel, conv));
  }
  EXPECT_THROW(ranked_union_convolve(canonical_relaxation(constant(2, 1)), canonical_relaxation(constant(3, 1))),
               std::invalid_argument);
}

TEST(SetFunctionLimits, GroundSetCap) {
  EXPECT_THROW(SF(IntegerRing{}, 26), std::invalid_argument);
}

TEST(IntegerRing, ModulusHandling) {
  EXPECT_THROW(IntegerRing(BigInt(1)), std::invalid_argument);
  IntegerRing m7(BigInt(7));
  EXPECT_EQ(m7.reduce(-3), 4);
  BigInt a = 5;
  m7.add_to(a, 4);
  EXPECT_EQ(a, 2);
  m7.sub_from(a, 5);
  EXPECT_EQ(a, 4);
  m7.mul_add(a, 3, 3);
  EXPECT_EQ(a, 6);
  EXPECT_EQ(parse_bigint("123456789012345678901234567890"), BigInt("123456789012345678901234567890"));
  EXPECT_THROW(parse_bigint("12x"), std::invalid_argument);
}

TEST(IntegerRing, ModularTransformsAgreeWithExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    BigInt m = 2 + rng() % 1000;
    IntegerRing exact, mod(m);
    auto f = random_set_function(exact, 5, rng), g = random_set_function(exact, 5, rng);
    auto reduce = [&](const SF& h) {
      SF out(mod, h.ground_size());
      for (std::uint32_t x = 0; x < h.table_size(); ++x) out[x] = mod.reduce(h[x]);
      return out;
    };
    EXPECT_EQ(zeta(reduce(f)), reduce(zeta(f)));
    EXPECT_EQ(mobius(reduce(f)), reduce(mobius(f)));
    EXPECT_EQ(subset_convolve(reduce(f), reduce(g)), reduce(subset_convolve(f, g)));
    EXPECT_EQ(union_product(reduce(f), reduce(g)), reduce(union_product(f, g)));
  }
}

TEST(PolynomialRing, TruncatedProduct) {
  PolynomialRing ring(2);
  auto p = ring.from_coefficients({1, 1});     // 1 + y
  auto q = ring.mul(p, p);                     // 1 + 2y + y^2
  EXPECT_EQ(q.coeffs, (std::vector<BigInt>{1, 2, 1}));
  auto r = ring.mul(q, p);                     // truncated: 1 + 3y + 3y^2
  EXPECT_EQ(r.coeffs, (std::vector<BigInt>{1, 3, 3}));
  EXPECT_TRUE(ring.is_zero(ring.monomial(3, 5)));
}

TEST(PolynomialRing, RingLaws) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coeff(-50, 50);
  for (std::size_t cap : {0u, 2u, 4u}) {
    PolynomialRing ring(cap);
    auto random_poly = [&] {
      std::vector<BigInt> c(cap + 1);
      for (auto& x : c) x = coeff(rng);
      return ring.from_coefficients(c);
    };
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_poly(), b = random_poly(), c = random_poly();
      EXPECT_EQ(ring.mul(a, b), ring.mul(b, a));
      EXPECT_EQ(ring.add(a, b), ring.add(b, a));
      EXPECT_EQ(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
      EXPECT_EQ(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
      EXPECT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
      EXPECT_EQ(ring.mul(a, ring.one()), a);
      EXPECT_EQ(ring.sub(ring.add(a, b), b), a);
    }
  }
}

TEST(PolynomialRing, ModularCoefficients) {
  PolynomialRing ring(3, IntegerRing(BigInt(5)));
  auto p = ring.from_coefficients({4, 4, 4, 4});
  auto q = ring.add(p, p);
  EXPECT_EQ(q.coeffs, (std::vector<BigInt>{3, 3, 3, 3}));
}

TEST(PolynomialRing, SetFunctionTransformsWork) {
  PolynomialRing ring(2);
  SetFunction<PolynomialRing> f(ring, 3);
  for (std::uint32_t x = 0; x < 8; ++x) f[x] = ring.monomial(x % 3, x + 1);
  EXPECT_EQ(mobius(zeta(f)), f);
}
