#pragma once

/**
 * @file arith.hpp
 * @brief Elementary multiplicative number theory.
 *
 * Moebius function, Euler totient, divisor lists, Kronecker symbol, p-adic
 * valuation (integers and rationals), p-free part and squarefree testing.
 * All functions are pure; the only shared state is the read-only default
 * sieve behind factorize().
 */

#include "bigint.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "primes.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace lucas {

namespace detail {

inline void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw error(errc::domain, std::string(what) + " requires n >= 1");
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not prime");
}

}  // namespace detail

inline int mobius(std::uint64_t n) {
  detail::require_positive(n, "mobius");
  int sign = 1;
  for (const auto& t : factorize(n)) {
    if (t.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline std::uint64_t totient(std::uint64_t n) {
  detail::require_positive(n, "totient");
  std::uint64_t result = n;
  for (const auto& t : factorize(n)) result = result / t.prime * (t.prime - 1);
  return result;
}

/// Divisors of n in ascending order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  detail::require_positive(n, "divisors");
  std::vector<std::uint64_t> out{1};
  for (const auto& t : factorize(n)) {
    const std::size_t count = out.size();
    std::uint64_t power = 1;
    for (unsigned e = 0; e < t.exponent; ++e) {
      power *= t.prime;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Pairs (d, mu(n/d)) for the divisors d of n with mu(n/d) != 0, d ascending.
inline std::vector<std::pair<std::uint64_t, int>> moebius_terms(std::uint64_t n) {
  detail::require_positive(n, "moebius_terms");
  std::vector<std::pair<std::uint64_t, int>> quotients{{1, 1}};
  for (const auto& t : factorize(n)) {
    const std::size_t count = quotients.size();
    for (std::size_t i = 0; i < count; ++i) quotients.push_back({quotients[i].first * t.prime, -quotients[i].second});
  }
  std::vector<std::pair<std::uint64_t, int>> out;
  out.reserve(quotients.size());
  for (const auto& [q, mu] : quotients) out.push_back({n / q, mu});
  std::sort(out.begin(), out.end());
  return out;
}

/// v_p(x) for a nonzero integer.
inline std::int64_t valuation(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw error(errc::domain, "valuation of 0 is undefined");
  detail::require_prime(p);
  if (p == 2) return static_cast<std::int64_t>(boost::multiprecision::lsb(boost::multiprecision::abs(x)));
  std::int64_t k = 0;
  BigInt m = boost::multiprecision::abs(x);
  BigInt q, r;
  const BigInt bp = p;
  for (;;) {
    boost::multiprecision::divide_qr(m, bp, q, r);
    if (r != 0) return k;
    m.swap(q);
    ++k;
  }
}

inline std::int64_t valuation(std::int64_t x, std::uint64_t p) {
  if (x == 0) throw error(errc::domain, "valuation of 0 is undefined");
  detail::require_prime(p);
  auto m = static_cast<unsigned __int128>(x < 0 ? -static_cast<__int128>(x) : x);
  std::int64_t k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

/// v_p(num) - v_p(den); negative for p in the denominator.
inline std::int64_t valuation(const BigRat& x, std::uint64_t p) {
  if (x == 0) throw error(errc::domain, "valuation of 0 is undefined");
  return valuation(numerator_of(x), p) - valuation(denominator_of(x), p);
}

/// m / p^{v_p(m)}, sign preserved.
inline BigInt p_free_part(const BigInt& m, std::uint64_t p) {
  if (m == 0) throw error(errc::domain, "p-free part of 0 is undefined");
  detail::require_prime(p);
  BigInt r = m;
  BigInt q, rem;
  const BigInt bp = p;
  for (;;) {
    boost::multiprecision::divide_qr(r, bp, q, rem);
    if (rem != 0) return r;
    r.swap(q);
  }
}

inline std::int64_t p_free_part(std::int64_t m, std::uint64_t p) {
  return static_cast<std::int64_t>(p_free_part(BigInt(m), p));
}

/// Kronecker symbol (D/p) for a prime p; 0 exactly when p | D.
inline int kronecker(std::int64_t d, std::uint64_t p) {
  detail::require_prime(p);
  const std::uint64_t r = modular::reduce(d, p);
  if (r == 0) return 0;
  if (p == 2) {
    const std::uint64_t r8 = modular::reduce(d, 8);
    return (r8 == 1 || r8 == 7) ? 1 : -1;
  }
  // Jacobi reciprocity on (r / p).
  std::uint64_t a = r;
  std::uint64_t n = p;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_squarefree(const BigInt& m, const FactorBudget& budget = {}) {
  if (m == 0) throw error(errc::domain, "squarefree test of 0 is undefined");
  return factorize(m, budget).is_squarefree();
}

inline bool is_squarefree(std::int64_t m) {
  if (m == 0) throw error(errc::domain, "squarefree test of 0 is undefined");
  const std::uint64_t a = m < 0 ? 0 - static_cast<std::uint64_t>(m) : static_cast<std::uint64_t>(m);
  return factorize(a).is_squarefree();
}

}  // namespace lucas
