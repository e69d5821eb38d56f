#pragma once

/**
 * @file primes.hpp
 * @brief Prime sieve and primality tests.
 *
 * PrimeSieve stores the smallest prime factor of every integer up to its
 * bound. The process-wide default sieve (bound 10^6) is built on first use
 * and is read-only afterwards, so it can be shared across threads.
 *
 * is_prime() on 64-bit values is deterministic Miller-Rabin with the
 * seven-base set that is exact below 2^64. is_probable_prime() on BigInt
 * runs Boost's Miller-Rabin with a fixed-seed engine so that results are
 * reproducible run to run.
 */

#include "bigint.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace lucas {

class PrimeSieve {
 public:
  static constexpr std::uint64_t default_bound = 1'000'000;

  explicit PrimeSieve(std::uint64_t bound = default_bound) : bound_(bound < 2 ? 2 : bound) {
    spf_.assign(bound_ + 1, 0);
    for (std::uint64_t i = 2; i <= bound_; ++i) {
      if (spf_[i] == 0) {
        primes_.push_back(i);
        for (std::uint64_t j = i; j <= bound_; j += i) {
          if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  static const PrimeSieve& global() {
    static const PrimeSieve sieve;
    return sieve;
  }

  std::uint64_t bound() const noexcept { return bound_; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

  /// Smallest prime factor of n; requires 2 <= n <= bound().
  std::uint64_t smallest_factor(std::uint64_t n) const { return spf_[n]; }

  bool contains(std::uint64_t n) const noexcept { return n <= bound_; }

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

namespace detail {

inline bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = modular::pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = modular::mul(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  const auto& sieve = PrimeSieve::global();
  if (sieve.contains(n)) return sieve.is_prime(n);
  if (n % 2 == 0) return false;
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!detail::miller_rabin_round(n, a, d, r)) return false;
  }
  return true;
}

inline bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime(static_cast<std::uint64_t>(n));
  std::mt19937_64 engine(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 32, engine);
}

}  // namespace lucas
