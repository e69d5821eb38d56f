#pragma once

/**
 * @file factor.hpp
 * @brief Integer factorization: sieve lookup, trial division, Pollard-Brent rho.
 *
 * Values inside the sieve are factored by smallest-prime-factor lookup.
 * Larger values are trial divided by every sieve prime (up to the square
 * root), and whatever cofactor survives is split by Pollard-Brent with a
 * bounded iteration budget. Running out of budget throws
 * errc::factorization_overflow; nothing is ever returned half-factored.
 *
 * Everything here is deterministic: rho starts from fixed seeds and
 * increments its polynomial constant on failure.
 */

#include "bigint.hpp"
#include "error.hpp"
#include "primes.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace lucas {

template <class Int>
struct PrimePower {
  Int prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers sorted by strictly increasing prime, every exponent >= 1.
template <class Int>
class Factorization {
 public:
  using term_type = PrimePower<Int>;

  Factorization() = default;

  const std::vector<term_type>& terms() const noexcept { return terms_; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void multiply(const Int& prime, unsigned exponent = 1) {
    if (exponent == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), prime,
                               [](const term_type& t, const Int& p) { return t.prime < p; });
    if (it != terms_.end() && it->prime == prime) {
      it->exponent += exponent;
    } else {
      terms_.insert(it, term_type{prime, exponent});
    }
  }

  Int value() const {
    Int result = 1;
    for (const auto& t : terms_) {
      for (unsigned i = 0; i < t.exponent; ++i) result *= t.prime;
    }
    return result;
  }

  bool is_squarefree() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const term_type& t) { return t.exponent == 1; });
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<term_type> terms_;
};

/// Limits for the rho stage. Trial division always runs to the sieve bound.
struct FactorBudget {
  std::uint64_t rho_iterations = 4'000'000;
};

namespace detail {

inline std::uint64_t gcd_of(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }
inline BigInt abs_diff(const BigInt& a, const BigInt& b) { return a > b ? BigInt(a - b) : BigInt(b - a); }

inline bool probable_prime(std::uint64_t n) { return is_prime(n); }
inline bool probable_prime(const BigInt& n) { return is_probable_prime(n); }

/// One Pollard-Brent attempt with polynomial x^2 + c. Returns a proper
/// divisor, n on cycle failure, or 0 if the iteration allowance ran out.
template <class Int>
Int brent_attempt(const Int& n, const Int& c, std::uint64_t& allowance) {
  constexpr std::uint64_t batch = 128;
  auto step = [&](const Int& x) { return modular::add(modular::mul(x, x, n), c, n); };
  Int y = Int(2) % n;
  Int x = y;
  Int ys = y;
  Int q = 1;
  Int g = 1;
  std::uint64_t r = 1;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t m = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < m; ++i) {
        y = step(y);
        q = modular::mul(q, abs_diff(x, y), n);
      }
      g = gcd_of(q, n);
      k += m;
      if (allowance < m) return Int(0);
      allowance -= m;
    }
    r *= 2;
  }
  if (g == n) {
    // Batched product overshot; replay one step at a time.
    do {
      ys = step(ys);
      g = gcd_of(abs_diff(x, ys), n);
      if (allowance == 0) return Int(0);
      --allowance;
    } while (g == 1);
  }
  return g;
}

template <class Int>
void split_composite(const Int& n, Factorization<Int>& out, std::uint64_t& allowance) {
  if (n == 1) return;
  if (probable_prime(n)) {
    out.multiply(n);
    return;
  }
  for (Int c = 1;; ++c) {
    Int d = brent_attempt(n, c, allowance);
    if (d == 0) {
      throw error(errc::factorization_overflow, "rho budget exhausted on cofactor " + to_decimal(BigInt(n)));
    }
    if (d != n) {
      split_composite(d, out, allowance);
      split_composite(Int(n / d), out, allowance);
      return;
    }
  }
}

inline std::uint64_t small_modulus(const BigInt& n, std::uint64_t p) {
  return static_cast<std::uint64_t>(boost::multiprecision::integer_modulus(n, p));
}

}  // namespace detail

/// Factor n >= 1. factorize(1) is the empty factorization.
inline Factorization<std::uint64_t> factorize(std::uint64_t n, const FactorBudget& budget = {},
                                               const PrimeSieve& sieve = PrimeSieve::global()) {
  if (n == 0) throw error(errc::domain, "cannot factor 0");
  Factorization<std::uint64_t> out;
  if (sieve.contains(n)) {
    while (n > 1) {
      const std::uint64_t p = sieve.smallest_factor(n);
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.multiply(p, e);
    }
    return out;
  }
  for (std::uint64_t p : sieve.primes()) {
    if (p * p > n) break;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.multiply(p, e);
  }
  if (n == 1) return out;
  const std::uint64_t b = sieve.bound();
  if (static_cast<unsigned __int128>(b) * b >= n) {
    out.multiply(n);
    return out;
  }
  std::uint64_t allowance = budget.rho_iterations;
  detail::split_composite(n, out, allowance);
  return out;
}

/// Factor |n| for nonzero n.
inline Factorization<BigInt> factorize(const BigInt& n, const FactorBudget& budget = {},
                                       const PrimeSieve& sieve = PrimeSieve::global()) {
  if (n == 0) throw error(errc::domain, "cannot factor 0");
  BigInt m = boost::multiprecision::abs(n);
  Factorization<BigInt> out;
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    for (const auto& t : factorize(static_cast<std::uint64_t>(m), budget, sieve)) out.multiply(BigInt(t.prime), t.exponent);
    return out;
  }
  for (std::uint64_t p : sieve.primes()) {
    if (BigInt(p) * p > m) break;
    if (detail::small_modulus(m, p) != 0) continue;
    unsigned e = 0;
    while (detail::small_modulus(m, p) == 0) {
      m /= p;
      ++e;
    }
    out.multiply(BigInt(p), e);
  }
  if (m == 1) return out;
  const BigInt b = sieve.bound();
  if (b * b >= m) {
    out.multiply(m);
    return out;
  }
  std::uint64_t allowance = budget.rho_iterations;
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    Factorization<std::uint64_t> small;
    detail::split_composite(static_cast<std::uint64_t>(m), small, allowance);
    for (const auto& t : small) out.multiply(BigInt(t.prime), t.exponent);
  } else {
    detail::split_composite(m, out, allowance);
  }
  return out;
}

}  // namespace lucas
