#include <gtest/gtest.h>

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "drs/field.hpp"

namespace drs {
namespace {

// Independent reference for extension multiplication: full product with
// 128-bit accumulators, then polynomial long division by g.
std::array<std::uint64_t, 3> reference_mul(std::uint64_t p, const MonicCubic& g, const ExtElem& x,
                                           const ExtElem& y) {
  using u128 = unsigned __int128;
  std::array<u128, 5> d{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d[i + j] = (d[i + j] + u128(x.coefficients()[i].value) * y.coefficients()[j].value) % p;
  const std::array<std::uint64_t, 4> gc{g.g0.value, g.g1.value, g.g2.value, 1};
  for (int top = 4; top >= 3; --top) {
    u128 lead = d[top];
    for (int m = 0; m <= 3; ++m) {
      // subtract lead * x^(top-3) * g
      d[top - 3 + m] = (d[top - 3 + m] + p - (lead * gc[m]) % p) % p;
    }
  }
  return {static_cast<std::uint64_t>(d[0]), static_cast<std::uint64_t>(d[1]), static_cast<std::uint64_t>(d[2])};
}

std::array<std::uint64_t, 3> raw(const ExtElem& x) {
  return {x.c0().value, x.c1().value, x.c2().value};
}

TEST(PrimeField, ModularExamples) {
  PrimeField f(5);
  EXPECT_EQ(f.add(Residue{4}, Residue{3}), Residue{2});
  EXPECT_EQ(f.sub(Residue{3}, Residue{4}), Residue{4});
  for (std::uint64_t x = 0; x < 5; ++x) EXPECT_EQ(f.mul(Residue{0}, Residue{x}), Residue{0});
}

TEST(PrimeField, InverseMatchesExhaustiveScan) {
  PrimeField f(5);
  EXPECT_EQ(f.inv(Residue{4}), Residue{4});
  EXPECT_EQ(f.inv(Residue{1}), Residue{1});
  // Oracle: scan F_5 for y with 3y = 1.
  std::uint64_t expected = 0;
  for (std::uint64_t y = 1; y < 5; ++y)
    if (3 * y % 5 == 1) expected = y;
  EXPECT_EQ(expected, 2u);
  EXPECT_EQ(f.inv(Residue{3}), Residue{expected});
  EXPECT_THROW(f.inv(Residue{0}), DivisionByZero);
}

TEST(PrimeField, RejectsNonPrimeOrEvenModulus) {
  EXPECT_THROW(PrimeField(2), InvalidParameter);
  EXPECT_THROW(PrimeField(9), InvalidParameter);
  EXPECT_THROW(PrimeField(1), InvalidParameter);
  EXPECT_NO_THROW(PrimeField((std::uint64_t{1} << 61) - 1));
}

TEST(PrimeField, PrimalityAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool trial = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) trial = false;
    EXPECT_EQ(is_prime(n), trial) << n;
  }
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PrimeField, InverseAtLargeModulus) {
  PrimeField f((std::uint64_t{1} << 61) - 1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Residue x = f.random(rng);
    if (x.value == 0) continue;
    EXPECT_EQ(f.mul(x, f.inv(x)), Residue{1});
  }
}

TEST(IrreducibleCubic, Examples) {
  PrimeField f5(5), f3(3);
  // g(x) = x^3 + x + 1 over F_5: values 1, 3, 1, 1, 4 at x = 0..4.
  MonicCubic g5{Residue{1}, Residue{1}, Residue{0}};
  const std::array<std::uint64_t, 5> values{1, 3, 1, 1, 4};
  for (std::uint64_t x = 0; x < 5; ++x) EXPECT_EQ(evaluate(f5, g5, Residue{x}).value, values[x]);
  EXPECT_TRUE(is_irreducible_cubic(f5, g5));
  EXPECT_EQ(find_irreducible_cubic(f5), g5);

  EXPECT_EQ(find_irreducible_cubic(f3), (MonicCubic{Residue{1}, Residue{2}, Residue{0}}));

  MonicCubic x3_plus_1{Residue{1}, Residue{0}, Residue{0}};
  EXPECT_EQ(evaluate(f5, x3_plus_1, Residue{4}).value, 0u);
  EXPECT_FALSE(is_irreducible_cubic(f5, x3_plus_1));
  EXPECT_FALSE(is_irreducible_cubic(f3, MonicCubic{}));  // x^3
}

TEST(IrreducibleCubic, SearchIsDeterministicAndRootless) {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 101ULL, 10007ULL, 65537ULL, 1000000007ULL}) {
    PrimeField f(p);
    MonicCubic g = find_irreducible_cubic(f);
    if (p <= 65537) {
      EXPECT_FALSE(has_root_by_scan(f, g)) << p;
    } else {
      EXPECT_TRUE(rootless_by_gcd(f, g)) << p;
    }
    EXPECT_EQ(find_irreducible_cubic(f), g) << p;
  }
}

TEST(IrreducibleCubic, SearchMatchesNaiveLexicographicScan) {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 17ULL, 23ULL, 29ULL, 31ULL}) {
    std::array<std::uint64_t, 3> first{};
    bool found = false;
    for (std::uint64_t g2 = 0; g2 < p && !found; ++g2)
      for (std::uint64_t g1 = 0; g1 < p && !found; ++g1)
        for (std::uint64_t g0 = 0; g0 < p && !found; ++g0) {
          bool root = false;
          for (std::uint64_t x = 0; x < p; ++x) root |= (x * x * x + g2 * x * x + g1 * x + g0) % p == 0;
          if (!root) {
            first = {g0, g1, g2};
            found = true;
          }
        }
    MonicCubic g = find_irreducible_cubic(PrimeField(p));
    EXPECT_EQ((std::array<std::uint64_t, 3>{g.g0.value, g.g1.value, g.g2.value}), first) << p;
  }
}

TEST(IrreducibleCubic, GcdTestAgreesWithRootScan) {
  for (std::uint64_t p : {5ULL, 101ULL, 65537ULL}) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < (p > 1000 ? 20 : 300); ++i) {
      MonicCubic g{f.random(rng), f.random(rng), f.random(rng)};
      EXPECT_EQ(rootless_by_gcd(f, g), !has_root_by_scan(f, g)) << p;
    }
  }
}

TEST(CubicField, Examples) {
  CubicField F(5);
  ASSERT_EQ(F.modulus(), (MonicCubic{Residue{1}, Residue{1}, Residue{0}}));
  ExtElem gamma = F.gamma();
  ExtElem gamma_sq = F.element(0, 0, 1);
  EXPECT_EQ(F.mul(gamma, gamma_sq), F.element(4, 4, 0));  // gamma^3 = -gamma - 1

  ExtElem x = F.element(2, 3, 1);
  EXPECT_EQ(F.mul(F.one(), x), x);
  ExtElem one_plus_gamma = F.element(1, 1, 0);
  EXPECT_TRUE(F.sub(one_plus_gamma, one_plus_gamma).is_zero());

  EXPECT_EQ(F.inv(F.one()), F.one());
  EXPECT_EQ(F.inv(F.element(4, 0, 0)), F.element(4, 0, 0));
  EXPECT_EQ(F.mul(one_plus_gamma, F.inv(one_plus_gamma)), F.one());
  EXPECT_THROW(F.inv(F.zero()), DivisionByZero);
}

TEST(CubicField, Decompose) {
  CubicField F(5);
  auto c = F.decompose(F.element(2, 3, 1));
  EXPECT_EQ(c[0], Residue{2});
  EXPECT_EQ(c[1], Residue{3});
  EXPECT_EQ(c[2], Residue{1});
  auto z = F.decompose(F.zero());
  EXPECT_EQ(z, (std::array<Residue, 3>{}));
  // beta = 1 + 3 gamma: gamma^2 coefficient a = 0, b = 3, c = 1.
  auto b = F.decompose(F.element(1, 3, 0));
  EXPECT_EQ(b[2], Residue{0});
  EXPECT_EQ(b[1], Residue{3});
  EXPECT_EQ(b[0], Residue{1});
}

TEST(CubicField, ContextMismatchIsRejected) {
  CubicField F5(5), F7(7);
  CubicField other5(PrimeField(5), MonicCubic{Residue{1}, Residue{2}, Residue{0}});  // x^3 + 2x + 1
  EXPECT_THROW(F5.add(F5.one(), F7.one()), ContextMismatch);
  EXPECT_THROW(F5.mul(F5.one(), other5.one()), ContextMismatch);
  EXPECT_THROW(F5.inv(ExtElem{}), ContextMismatch);
}

TEST(CubicField, RejectsReducibleModulus) {
  EXPECT_THROW(CubicField(PrimeField(5), MonicCubic{Residue{1}, Residue{0}, Residue{0}}), InvalidParameter);
}

class FieldAxioms : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldAxioms, HoldOnRandomTriples) {
  const std::uint64_t p = GetParam();
  CubicField F(p);
  const PrimeField& f = F.base();
  std::mt19937_64 rng(p ^ 0x5eed);
  for (int i = 0; i < 10000; ++i) {
    Residue a = f.random(rng), b = f.random(rng), c = f.random(rng);
    EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    EXPECT_EQ(f.mul(a, b), f.mul(b, a));
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    if (a.value != 0) {
      EXPECT_EQ(f.mul(a, f.inv(a)), Residue{1});
    }

    ExtElem x = F.random(rng), y = F.random(rng), z = F.random(rng);
    EXPECT_EQ(F.add(F.add(x, y), z), F.add(x, F.add(y, z)));
    EXPECT_EQ(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)));
    EXPECT_EQ(F.mul(x, y), F.mul(y, x));
    EXPECT_EQ(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)));
    if (!x.is_zero()) {
      EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
    }
    EXPECT_EQ(raw(F.mul(x, y)), reference_mul(p, F.modulus(), x, y));
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, FieldAxioms,
                         ::testing::Values(3ULL, 5ULL, 13ULL, 10007ULL, 1000000007ULL, 2305843009213693951ULL));

TEST(OpCounting, ScopesNestAndFold) {
  PrimeField f(7);
  OpCount outer;
  {
    CountingScope s1(outer);
    f.add(Residue{1}, Residue{2});
    OpCount inner;
    {
      CountingScope s2(inner);
      f.mul(Residue{3}, Residue{4});
      f.inv(Residue{3});
    }
    EXPECT_EQ(inner.mul, 1u);
    EXPECT_EQ(inner.inv, 1u);
    EXPECT_EQ(outer.total(), 3u);
  }
  EXPECT_EQ(outer.add_sub, 1u);
  EXPECT_EQ(outer.mul, 1u);
  EXPECT_EQ(outer.inv, 1u);
}

}  // namespace
}  // namespace drs
