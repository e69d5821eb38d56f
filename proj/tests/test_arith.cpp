#include "lucas/arith.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lucas;

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(4), 0);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_EQ(mobius(30), -1);
}

TEST(Mobius, MatchesOracle) {
  for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_EQ(mobius(n), oracle::mobius(n)) << n;
}

TEST(Totient, Examples) {
  EXPECT_EQ(totient(1), 1u);
  EXPECT_EQ(totient(7), 6u);
  EXPECT_EQ(totient(12), oracle::totient(12));
  EXPECT_EQ(totient(12), 4u);
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(1), std::vector<std::uint64_t>{1});
  EXPECT_EQ(divisors(12), oracle::divisors(12));
  EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(97), (std::vector<std::uint64_t>{1, 97}));
  for (std::uint64_t n = 1; n <= 500; ++n) ASSERT_EQ(divisors(n), oracle::divisors(n));
}

TEST(Arith, ZeroRejected) {
  EXPECT_THROW(mobius(0), error);
  EXPECT_THROW(totient(0), error);
  EXPECT_THROW(divisors(0), error);
  EXPECT_THROW(valuation(BigRat(0), 2), error);
  EXPECT_THROW(p_free_part(BigInt(0), 3), error);
  EXPECT_THROW(is_squarefree(BigInt(0)), error);
  try {
    valuation(BigInt(12), 4);
    FAIL() << "composite p accepted";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_prime);
  }
}

TEST(Arith, MoebiusSumIdentity) {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    int sum = 0;
    for (std::uint64_t d : divisors(n)) sum += mobius(d);
    ASSERT_EQ(sum, n == 1 ? 1 : 0) << n;
  }
}

TEST(Arith, TotientMoebiusIdentity) {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    std::int64_t sum = 0;
    for (std::uint64_t d : divisors(n)) sum += mobius(n / d) * static_cast<std::int64_t>(d);
    ASSERT_EQ(sum, static_cast<std::int64_t>(totient(n))) << n;
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(BigRat(12), 2), 2);
  EXPECT_EQ(valuation(BigRat(7, 9), 3), -2);
  EXPECT_EQ(valuation(BigRat(1), 5), 0);
  EXPECT_EQ(valuation(BigInt(-48), 2), 4);
  EXPECT_EQ(valuation(std::int64_t{-250}, 5), 3);
}

TEST(Valuation, AdditiveOnRandomRationals) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-100'000, 100'000);
  std::uniform_int_distribution<std::int64_t> den(1, 100'000);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = num(rng), b = num(rng);
    if (a == 0 || b == 0) continue;
    const BigRat x(a, den(rng));
    const BigRat y(b, den(rng));
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      ASSERT_EQ(valuation(x * y, p), valuation(x, p) + valuation(y, p));
      ASSERT_EQ(valuation(x, p), oracle::valuation(x, p));
    }
  }
}

TEST(PFreePart, Examples) {
  EXPECT_EQ(p_free_part(std::int64_t{12}, 2), 3);
  EXPECT_EQ(p_free_part(std::int64_t{-18}, 3), -2);
  EXPECT_EQ(p_free_part(std::int64_t{7}, 5), 7);
}

TEST(PFreePart, CoprimeAndReconstructs) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> dist(-1'000'000, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t m = dist(rng);
    if (m == 0) continue;
    for (std::uint64_t p : {2, 3, 7}) {
      const std::int64_t f = p_free_part(m, p);
      ASSERT_EQ(valuation(f, p), 0);
      std::int64_t back = f;
      for (std::int64_t k = 0; k < valuation(m, p); ++k) back *= static_cast<std::int64_t>(p);
      ASSERT_EQ(back, m);
    }
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(5, 5), 0);
  EXPECT_EQ(kronecker(5, 11), 1);
  EXPECT_EQ(kronecker(5, 7), -1);
  EXPECT_EQ(kronecker(-44, 2), 0);
  EXPECT_EQ(kronecker(-7, 2), 1);   // -7 = 1 mod 8
  EXPECT_EQ(kronecker(5, 2), -1);   // 5 = 5 mod 8
}

TEST(Kronecker, MatchesSquareEnumeration) {
  for (std::uint64_t p : oracle::primes_up_to(200)) {
    if (p == 2) continue;
    for (std::int64_t d = -60; d <= 60; ++d) {
      if (d == 0) continue;
      const std::uint64_t r = modular::reduce(d, p);
      int expected = 0;
      if (r != 0) {
        expected = -1;
        for (std::uint64_t x = 1; x < p; ++x) {
          if (x * x % p == r) expected = 1;
        }
      }
      ASSERT_EQ(kronecker(d, p), expected) << d << " " << p;
    }
  }
}

TEST(Squarefree, Examples) {
  EXPECT_TRUE(is_squarefree(std::int64_t{6}));
  EXPECT_FALSE(is_squarefree(std::int64_t{4}));
  EXPECT_FALSE(is_squarefree(std::int64_t{-45}));
  EXPECT_TRUE(is_squarefree(std::int64_t{1}));
  EXPECT_TRUE(is_squarefree(std::int64_t{-1}));
}

TEST(Squarefree, AgreesWithMobius) {
  for (std::int64_t m = 2; m <= 100'000; ++m) {
    ASSERT_EQ(is_squarefree(m), mobius(static_cast<std::uint64_t>(m)) != 0) << m;
  }
}

TEST(Factorize, ReconstructsAndSorted) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> dist(1, std::uint64_t{1} << 62);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = dist(rng);
    const auto f = factorize(n);
    ASSERT_EQ(f.value(), n);
    for (std::size_t k = 0; k < f.size(); ++k) {
      ASSERT_TRUE(oracle::is_prime(f.terms()[k].prime) || f.terms()[k].prime > 1'000'000'000'000ULL);
      ASSERT_TRUE(is_prime(f.terms()[k].prime));
      ASSERT_GE(f.terms()[k].exponent, 1u);
      if (k > 0) {
        ASSERT_LT(f.terms()[k - 1].prime, f.terms()[k].prime);
      }
    }
  }
}

TEST(Factorize, BigSemiprimesAndSquares) {
  const BigInt p1("1000000000000000003");
  const BigInt p2("1000000007");
  const BigInt n = p1 * p2 * p2 * 1'000'003 * 8;
  const auto f = factorize(n);
  EXPECT_EQ(f.value(), n);
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f.terms()[0].prime, 2);
  EXPECT_EQ(f.terms()[0].exponent, 3u);
  EXPECT_EQ(f.terms()[2].prime, p2);
  EXPECT_EQ(f.terms()[2].exponent, 2u);
  EXPECT_FALSE(f.is_squarefree());
  EXPECT_EQ(factorize(BigInt(-30)).value(), 30);
}

TEST(Factorize, BudgetOverflowIsReported) {
  // Two 30-bit primes: needs ~2^15 rho steps, far above a budget of 10.
  const BigInt n = BigInt(1'073'741'789) * BigInt(1'073'741'827) * BigInt("18446744073709551557");
  try {
    factorize(n, FactorBudget{.rho_iterations = 10});
    FAIL() << "expected overflow";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::factorization_overflow);
  }
  EXPECT_EQ(factorize(n).value(), n);
}
