#pragma once

/**
 * @file dual.hpp
 * @brief Moebius duals M^A_n = prod_{d | n} A_d^{mu(n/d)} by exact rational product.
 *
 * Terms with mu(n/d) = +1 accumulate into a numerator, terms with
 * mu(n/d) = -1 into a denominator; the quotient is normalized once at the
 * end. This is the direct route. The closed-form valuation laws in
 * valuation.hpp are computed independently and cross-checked against it.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "error.hpp"
#include "sequence.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace lucas {

struct DualValue {
  std::uint64_t index;
  BigRat value;
  bool integral;
};

namespace detail {

/// Numerator/denominator accumulation; term(d) must return a nonzero BigInt or BigRat.
template <class TermFn>
BigRat dual_product(std::uint64_t n, TermFn&& term) {
  require_positive(n, "dual");
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& [d, mu] : moebius_terms(n)) {
    const BigRat a = term(d);
    if (a == 0) throw error(errc::zero_term, "term at d = " + std::to_string(d) + " is zero");
    if (mu > 0) {
      num *= numerator_of(a);
      den *= denominator_of(a);
    } else {
      num *= denominator_of(a);
      den *= numerator_of(a);
    }
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRat(num, den);
}

inline BigInt require_integral(const BigRat& x, std::uint64_t n) {
  if (!is_integral(x)) {
    throw error(errc::internal_non_integral, "M^U_" + std::to_string(n) + " = " + to_decimal(x));
  }
  return numerator_of(x);
}

}  // namespace detail

/// Generic dual from explicit values at every divisor of n.
inline BigRat dual_of(const std::map<std::uint64_t, BigRat>& values_at_divisors, std::uint64_t n) {
  detail::require_positive(n, "dual_of");
  for (std::uint64_t d : divisors(n)) {
    if (!values_at_divisors.contains(d)) {
      throw error(errc::missing_divisor, "no value for divisor " + std::to_string(d) + " of " + std::to_string(n));
    }
  }
  return detail::dual_product(n, [&](std::uint64_t d) { return values_at_divisors.at(d); });
}

/// Dual of a tabulated integer sequence; terms[d] = A_d for every d <= n.
inline BigRat dual_of(std::span<const BigInt> terms, std::uint64_t n) {
  if (n >= terms.size()) throw error(errc::missing_divisor, "sequence table shorter than index " + std::to_string(n));
  return detail::dual_product(n, [&](std::uint64_t d) { return BigRat(terms[d]); });
}

/// M^U_n; always an integer.
inline BigInt dual_u(const LucasParams& params, std::uint64_t n) {
  return detail::require_integral(detail::dual_product(n, [&](std::uint64_t d) { return BigRat(u(params, d)); }), n);
}

/// M^U_n from a table with table[d] = U_d.
inline BigInt dual_u(std::span<const BigInt> u_table, std::uint64_t n) {
  return detail::require_integral(dual_of(u_table, n), n);
}

inline DualValue dual_v(const LucasParams& params, std::uint64_t n) {
  BigRat value = detail::dual_product(n, [&](std::uint64_t d) { return BigRat(v(params, d)); });
  const bool integral = is_integral(value);
  return DualValue{n, std::move(value), integral};
}

inline DualValue dual_v(std::span<const BigInt> v_table, std::uint64_t n) {
  BigRat value = dual_of(v_table, n);
  const bool integral = is_integral(value);
  return DualValue{n, std::move(value), integral};
}

/// M^U_{2n} through the doubling relation: M^V_n for odd n, M^V_n M^U_n for even n.
inline BigRat dual_u_doubled(const LucasParams& params, std::uint64_t n) {
  detail::require_positive(n, "dual_u_doubled");
  BigRat result = dual_v(params, n).value;
  if (n % 2 == 0) result *= BigRat(dual_u(params, n));
  return result;
}

}  // namespace lucas
