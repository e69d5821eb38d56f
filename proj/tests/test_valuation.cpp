#include "lucas/valuation.hpp"
#include "lucas/dual.hpp"
#include "grid.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace lucas;

namespace {

std::string label(const ValuationResult& r) { return std::string(to_string(r.branch)); }

}  // namespace

TEST(EntryPoint, Examples) {
  const auto f = fibonacci_params();
  const auto two = entry_point(f, 2);
  EXPECT_EQ(two.value, 3u);
  EXPECT_EQ(two.branch, EntryBranch::two_not_dividing_discriminant);
  const auto five = entry_point(f, 5);
  EXPECT_EQ(five.value, 5u);
  EXPECT_EQ(five.branch, EntryBranch::p_divides_discriminant);
  const auto seven = entry_point(f, 7);
  EXPECT_EQ(seven.value, 8u);
  EXPECT_EQ(seven.branch, EntryBranch::generic);
  const auto none = entry_point(LucasParams::make(1, 2), 2);
  EXPECT_FALSE(none.value.has_value());
  EXPECT_EQ(none.branch, EntryBranch::none_p_divides_q);
  EXPECT_EQ(entry_point(LucasParams::make(2, 12), 2).value, 2u);
  EXPECT_THROW(entry_point(f, 9), error);
}

TEST(EntryPoint, MatchesRecurrenceSearch) {
  for (const auto& ps : testgrid::accepted_pairs(8)) {
    for (std::uint64_t p : oracle::primes_up_to(50)) {
      const auto e = entry_point(ps, p);
      ASSERT_EQ(e.value, oracle::entry_point(ps.p(), ps.q(), p, 2 * p + 2)) << to_string(ps) << " p=" << p;
    }
  }
}

TEST(VpU, Examples) {
  const auto f = fibonacci_params();
  EXPECT_EQ(v_p_u(f, 2, 6).exponent, 3);
  EXPECT_EQ(label(v_p_u(f, 2, 6)), "c.1");
  EXPECT_EQ(v_p_u(f, 5, 25).exponent, 2);
  EXPECT_EQ(label(v_p_u(f, 5, 25)), "b.1");
  const auto r = v_p_u(LucasParams::make(2, -2), 2, 4);
  EXPECT_EQ(r.exponent, 4);
  EXPECT_EQ(label(r), "e.even+h");
  EXPECT_EQ(v_p_u(LucasParams::make(3, 5), 7, 1).exponent, 0);
}

TEST(VpDualU, Examples) {
  const auto f = fibonacci_params();
  EXPECT_EQ(v_p_dual_u(f, 2, 6).exponent, 2);
  EXPECT_EQ(label(v_p_dual_u(f, 2, 6)), "c.2");
  EXPECT_EQ(v_p_dual_u(f, 5, 5).exponent, 1);
  EXPECT_EQ(label(v_p_dual_u(f, 5, 5)), "b.1");
  EXPECT_EQ(v_p_dual_u(f, 2, 12).exponent, 1);
  EXPECT_EQ(label(v_p_dual_u(f, 2, 12)), "c.3");
  const auto d = v_p_dual_u(LucasParams::make(2, 12), 2, 3);
  EXPECT_EQ(d.exponent, 3);
  EXPECT_EQ(label(d), "d.2");
  const auto ex = v_p_dual_u(LucasParams::make(2, -2), 2, 4);
  EXPECT_EQ(ex.exponent, 3);
  EXPECT_EQ(label(ex), "e.exceptional");
}

TEST(VpDualV, Examples) {
  const auto f = fibonacci_params();
  EXPECT_EQ(v_p_dual_v(f, 3, 4), -1);
  EXPECT_EQ(v_p_dual_v(f, 2, 3), 2);
  EXPECT_EQ(v_p_dual_v(LucasParams::make(4, 3), 5, 1), 0);
}

TEST(Valuation, RejectsBadInput) {
  const auto f = fibonacci_params();
  try {
    v_p_u(f, 4, 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_prime);
  }
  EXPECT_THROW(v_p_u(f, 3, 0), error);
  EXPECT_THROW(v_p_dual_u(f, 3, 0), error);
}

TEST(Valuation, SmallGridAgainstExact) {
  for (const auto& ps : testgrid::accepted_pairs(5)) {
    ValuationLaws laws(ps);
    const auto us = oracle::u_terms(ps.p(), ps.q(), 80);
    const auto vs = oracle::v_terms(ps.p(), ps.q(), 80);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      for (std::uint64_t n = 1; n <= 80; ++n) {
        ASSERT_EQ(laws.u(p, n).exponent, oracle::valuation(us[n], p)) << to_string(ps) << " p=" << p << " n=" << n;
        ASSERT_EQ(laws.dual_u(p, n).exponent, oracle::valuation(oracle::dual(us, n), p))
            << to_string(ps) << " p=" << p << " n=" << n;
        if (n <= 40) {
          ASSERT_EQ(laws.dual_v(p, n).exponent, oracle::valuation(oracle::dual(vs, n), p))
              << to_string(ps) << " p=" << p << " n=" << n;
        }
      }
    }
  }
}

TEST(Valuation, InversionSum) {
  for (const auto& ps : testgrid::accepted_pairs(4)) {
    ValuationLaws laws(ps);
    for (std::uint64_t p : {2, 3, 5}) {
      for (std::uint64_t n = 1; n <= 200; ++n) {
        std::int64_t sum = 0;
        for (std::uint64_t d : divisors(n)) {
          if (d > 1) sum += laws.dual_u(p, d).exponent;
        }
        ASSERT_EQ(sum, laws.u(p, n).exponent) << to_string(ps) << " p=" << p << " n=" << n;
      }
    }
  }
}

TEST(Valuation, StructuralFacts) {
  for (const auto& ps : testgrid::accepted_pairs(8)) {
    const std::int64_t d = ps.discriminant();
    for (std::uint64_t p : oracle::primes_up_to(31)) {
      const auto e = entry_point(ps, p);
      if (!e.value || (ps.p() % static_cast<std::int64_t>(p) == 0 && ps.q() % static_cast<std::int64_t>(p) == 0)) continue;
      const std::uint64_t z = *e.value;
      const bool p_divides_z = z % p == 0;
      const bool p_is_z = z == p;
      const bool p_divides_d = d % static_cast<std::int64_t>(p) == 0;
      ASSERT_EQ(p_divides_z, p_is_z) << to_string(ps) << " p=" << p;
      ASSERT_EQ(p_is_z, p_divides_d) << to_string(ps) << " p=" << p;
      if (p != 2 && !p_divides_d) {
        const auto order = static_cast<std::int64_t>(p) - kronecker(d, p);
        ASSERT_EQ(order % static_cast<std::int64_t>(z), 0) << to_string(ps) << " p=" << p;
      }
      const auto lo = anchor_valuation(ps, p, z);
      const auto hi = anchor_valuation(ps, p, p * z);
      ASSERT_GE(hi, lo + 1);
      if (p > 2) {
        ASSERT_EQ(hi, lo + 1) << to_string(ps) << " p=" << p;
      }
    }
  }
}
