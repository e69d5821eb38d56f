#pragma once

/**
 * @file bigint.hpp
 * @brief Arbitrary-precision integer and rational types plus modular helpers.
 *
 * BigInt and BigRat are Boost.Multiprecision's cpp_int and cpp_rational.
 * cpp_rational keeps itself normalized (gcd(num, den) = 1, den > 0, zero as
 * 0/1) after every operation, so those invariants hold at every boundary.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace lucas {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline std::string to_decimal(const BigRat& x) {
  auto num = boost::multiprecision::numerator(x);
  auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline BigInt numerator_of(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const BigRat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const BigRat& x) { return denominator_of(x) == 1; }

namespace modular {

/// x mod m in [0, m) for a signed x.
inline std::uint64_t reduce(std::int64_t x, std::uint64_t m) {
  __int128 r = static_cast<__int128>(x) % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline BigInt reduce(std::int64_t x, const BigInt& m) {
  BigInt r = BigInt(x) % m;
  if (r < 0) r += m;
  return r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline BigInt mul(const BigInt& a, const BigInt& b, const BigInt& m) { return a * b % m; }

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  auto s = static_cast<unsigned __int128>(a) + b;
  return static_cast<std::uint64_t>(s >= m ? s - m : s);
}

inline BigInt add(const BigInt& a, const BigInt& b, const BigInt& m) {
  BigInt s = a + b;
  if (s >= m) s -= m;
  return s;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace modular
}  // namespace lucas
