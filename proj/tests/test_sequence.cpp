#include "lucas/sequence.hpp"
#include "grid.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lucas;

namespace {

errc rejection(std::int64_t p, std::int64_t q) {
  try {
    LucasParams::make(p, q);
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "(" << p << "," << q << ") accepted";
  return errc::domain;
}

}  // namespace

TEST(LucasParams, Fibonacci) {
  const auto f = LucasParams::make(1, -1);
  EXPECT_EQ(f.discriminant(), 5);
  EXPECT_TRUE(f.is_regular());
}

TEST(LucasParams, Irregular) {
  const auto ps = LucasParams::make(2, 12);
  EXPECT_EQ(ps.discriminant(), -44);
  EXPECT_FALSE(ps.is_regular());
}

TEST(LucasParams, Rejections) {
  EXPECT_EQ(rejection(0, 3), errc::zero_parameter);
  EXPECT_EQ(rejection(3, 0), errc::zero_parameter);
  EXPECT_EQ(rejection(2, 1), errc::zero_discriminant);
  EXPECT_EQ(rejection(2, 2), errc::degenerate);  // U_4(2,2) = 0
  EXPECT_EQ(rejection(1, 1), errc::degenerate);
  EXPECT_EQ(rejection(3, 3), errc::degenerate);
  EXPECT_EQ(rejection(std::int64_t{1} << 40, 1), errc::parameter_range);
}

TEST(LucasParams, AcceptanceMatchesVanishingSearch) {
  for (std::int64_t p = -10; p <= 10; ++p) {
    for (std::int64_t q = -10; q <= 10; ++q) {
      bool ok = true;
      try {
        LucasParams::make(p, q);
      } catch (const error&) {
        ok = false;
      }
      ASSERT_EQ(ok, oracle::accepted(p, q)) << p << "," << q;
    }
  }
}

TEST(Sequence, Examples) {
  const auto f = fibonacci_params();
  EXPECT_EQ(u(f, 10), 55);
  EXPECT_EQ(u(f, 1), 1);
  EXPECT_EQ(u(f, 0), 0);
  EXPECT_EQ(u(LucasParams::make(2, 12), 3), -8);
  EXPECT_EQ(v(f, 6), 18);
  EXPECT_EQ(v(LucasParams::make(5, 3), 0), 2);
  EXPECT_EQ(v(LucasParams::make(-7, 3), 1), -7);
}

TEST(Sequence, MatrixPowerMatchesRecurrence) {
  for (const auto& ps : testgrid::accepted_pairs(5)) {
    const auto ou = oracle::u_terms(ps.p(), ps.q(), 120);
    const auto ov = oracle::v_terms(ps.p(), ps.q(), 120);
    const auto table = sequence(ps, SequenceKind::first, 120);
    for (std::uint64_t n = 0; n <= 120; n += 7) {
      ASSERT_EQ(u(ps, n), ou[n]);
      ASSERT_EQ(v(ps, n), ov[n]);
      ASSERT_EQ(table[n], ou[n]);
    }
  }
}

TEST(Sequence, Doubling) {
  for (const auto& ps : testgrid::accepted_pairs(8)) {
    const auto us = sequence(ps, SequenceKind::first, 400);
    const auto vs = sequence(ps, SequenceKind::second, 200);
    for (std::uint64_t n = 1; n <= 200; ++n) ASSERT_EQ(us[2 * n], vs[n] * us[n]) << to_string(ps) << " n=" << n;
  }
}

TEST(Sequence, NormIdentity) {
  for (const auto& ps : testgrid::accepted_pairs(8)) {
    const auto us = sequence(ps, SequenceKind::first, 200);
    const auto vs = sequence(ps, SequenceKind::second, 200);
    BigInt q_power = 1;
    for (std::uint64_t n = 0; n <= 200; ++n) {
      ASSERT_EQ(vs[n] * vs[n] - BigInt(ps.discriminant()) * us[n] * us[n], 4 * q_power);
      q_power *= ps.q();
    }
  }
}

TEST(Sequence, NonDegenerate) {
  for (const auto& ps : testgrid::accepted_pairs(8)) {
    const auto us = sequence(ps, SequenceKind::first, 500);
    for (std::uint64_t n = 1; n <= 500; ++n) ASSERT_NE(us[n], 0) << to_string(ps) << " n=" << n;
  }
}

TEST(Modular, Examples) {
  const auto f = fibonacci_params();
  EXPECT_EQ(u_mod(f, 8, 7), 0u);
  EXPECT_EQ(u_mod(f, 0, 13), 0u);
  EXPECT_EQ(u_mod(f, 12, 9), 0u);
  EXPECT_EQ(v_mod(f, 1, 5), 1u);
  EXPECT_EQ(v_mod(f, 6, 5), 3u);
  EXPECT_EQ(v_mod(LucasParams::make(4, 1), 0, 3), 2u);
  EXPECT_THROW(u_mod(f, 3, 1), error);
  EXPECT_THROW(v_mod(f, 3, 0), error);
}

TEST(Modular, AgreesWithExactOnRandomTriples) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> param(-8, 8);
  std::uniform_int_distribution<std::uint64_t> index(0, 10'000);
  std::uniform_int_distribution<std::uint64_t> modulus(2, 1'000'000);
  int checked = 0;
  while (checked < 1000) {
    std::optional<LucasParams> ps;
    try {
      ps = LucasParams::make(param(rng), param(rng));
    } catch (const error&) {
      continue;
    }
    const std::uint64_t n = index(rng);
    const std::uint64_t m = modulus(rng);
    BigInt um = u(*ps, n) % m;
    if (um < 0) um += m;
    BigInt vm = v(*ps, n) % m;
    if (vm < 0) vm += m;
    ASSERT_EQ(BigInt(u_mod(*ps, n, m)), um);
    ASSERT_EQ(BigInt(v_mod(*ps, n, m)), vm);
    ++checked;
  }
}

TEST(Modular, EvenAndBigModuli) {
  const auto ps = LucasParams::make(-6, 8);
  const BigInt big = boost::multiprecision::pow(BigInt(2), 100) + 1;
  for (std::uint64_t n : {0, 1, 2, 17, 64, 999}) {
    const BigInt exact = u(ps, n);
    BigInt r = exact % big;
    if (r < 0) r += big;
    EXPECT_EQ(u_mod(ps, n, big), r);
    BigInt r2 = exact % 1024;
    if (r2 < 0) r2 += 1024;
    EXPECT_EQ(BigInt(u_mod(ps, n, std::uint64_t{1024})), r2);
  }
}
