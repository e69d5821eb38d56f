#pragma once

/**
 * @file sequence.hpp
 * @brief Validated Lucas parameters and evaluation of U_n(P, Q), V_n(P, Q).
 *
 * U and V satisfy X_n = P X_{n-1} - Q X_{n-2} with seeds (0, 1) and (2, P).
 * Single terms are computed by binary powering of the companion matrix
 *
 *     C = [[P, -Q], [1, 0]],   C^n = [[U_{n+1}, -Q U_n], [U_n, -Q U_{n-1}]],
 *
 * either exactly or in Z/mZ. The matrix route needs no division by 2, so it
 * is valid for every modulus including powers of two. V_n is read off as
 * 2 U_{n+1} - P U_n.
 *
 * The characteristic roots are never materialized; everything is integral.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "error.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace lucas {

enum class SequenceKind { first, second };

constexpr const char* to_string(SequenceKind kind) noexcept { return kind == SequenceKind::first ? "U" : "V"; }

class LucasParams {
 public:
  /// Largest |P|, |Q| accepted; keeps P^2 - 4Q inside int64.
  static constexpr std::int64_t max_abs_parameter = (std::int64_t{1} << 31) - 1;

  /// Validates (P, Q); throws zero_parameter, zero_discriminant or degenerate.
  static LucasParams make(std::int64_t p, std::int64_t q) {
    if (p == 0 || q == 0) throw error(errc::zero_parameter, "P and Q must be nonzero");
    if (p > max_abs_parameter || -p > max_abs_parameter || q > max_abs_parameter || -q > max_abs_parameter) {
      throw error(errc::parameter_range, "|P| and |Q| must not exceed " + std::to_string(max_abs_parameter));
    }
    const std::int64_t p2 = p * p;
    const std::int64_t d = p2 - 4 * q;
    if (d == 0) throw error(errc::zero_discriminant, "P^2 = 4Q");
    // With P != 0 and D != 0, alpha/beta is a root of unity exactly when
    // P^2 is Q, 2Q or 3Q (orders 3, 4, 6).
    if (p2 == q || p2 == 2 * q || p2 == 3 * q) {
      throw error(errc::degenerate, "U(" + std::to_string(p) + "," + std::to_string(q) + ") is degenerate");
    }
    return LucasParams(p, q, d);
  }

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  std::int64_t discriminant() const noexcept { return d_; }
  bool is_regular() const noexcept { return std::gcd(p_, q_) == 1; }

  friend bool operator==(const LucasParams&, const LucasParams&) = default;

 private:
  LucasParams(std::int64_t p, std::int64_t q, std::int64_t d) : p_(p), q_(q), d_(d) {}

  std::int64_t p_;
  std::int64_t q_;
  std::int64_t d_;
};

inline LucasParams fibonacci_params() { return LucasParams::make(1, -1); }

inline std::string to_string(const LucasParams& params) {
  return "(" + std::to_string(params.p()) + "," + std::to_string(params.q()) + ")";
}

namespace ring {

struct Exact {
  using value_type = BigInt;
  BigInt from(std::int64_t x) const { return BigInt(x); }
  BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
  BigInt sub(const BigInt& a, const BigInt& b) const { return a - b; }
  BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
};

template <class Int>
struct Modular {
  using value_type = Int;
  Int modulus;
  Int from(std::int64_t x) const { return modular::reduce(x, modulus); }
  Int add(const Int& a, const Int& b) const { return modular::add(a, b, modulus); }
  Int sub(const Int& a, const Int& b) const { return a >= b ? Int(a - b) : Int(modulus - (b - a)); }
  Int mul(const Int& a, const Int& b) const { return modular::mul(a, b, modulus); }
};

}  // namespace ring

/// (U_n, U_{n+1}) in the given ring.
template <class Ring>
std::pair<typename Ring::value_type, typename Ring::value_type> u_pair(const LucasParams& params, std::uint64_t n,
                                                                       const Ring& r) {
  using T = typename Ring::value_type;
  using Matrix = std::array<T, 4>;  // row-major 2x2
  auto product = [&r](const Matrix& a, const Matrix& b) {
    return Matrix{r.add(r.mul(a[0], b[0]), r.mul(a[1], b[2])), r.add(r.mul(a[0], b[1]), r.mul(a[1], b[3])),
                  r.add(r.mul(a[2], b[0]), r.mul(a[3], b[2])), r.add(r.mul(a[2], b[1]), r.mul(a[3], b[3]))};
  };
  Matrix result{r.from(1), r.from(0), r.from(0), r.from(1)};
  Matrix base{r.from(params.p()), r.from(-params.q()), r.from(1), r.from(0)};
  while (n > 0) {
    if (n & 1) result = product(result, base);
    n >>= 1;
    if (n > 0) base = product(base, base);
  }
  return {result[2], result[0]};
}

template <class Ring>
typename Ring::value_type v_from_pair(const LucasParams& params, const typename Ring::value_type& un,
                                      const typename Ring::value_type& un1, const Ring& r) {
  return r.sub(r.add(un1, un1), r.mul(r.from(params.p()), un));
}

inline BigInt u(const LucasParams& params, std::uint64_t n) { return u_pair(params, n, ring::Exact{}).first; }

inline BigInt v(const LucasParams& params, std::uint64_t n) {
  const ring::Exact r;
  auto [un, un1] = u_pair(params, n, r);
  return v_from_pair(params, un, un1, r);
}

inline BigInt term(const LucasParams& params, SequenceKind kind, std::uint64_t n) {
  return kind == SequenceKind::first ? u(params, n) : v(params, n);
}

/// Terms X_0 .. X_{n_max} by the recurrence.
inline std::vector<BigInt> sequence(const LucasParams& params, SequenceKind kind, std::uint64_t n_max) {
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  out.emplace_back(kind == SequenceKind::first ? 0 : 2);
  if (n_max >= 1) out.emplace_back(kind == SequenceKind::first ? 1 : params.p());
  const BigInt p = params.p();
  const BigInt q = params.q();
  for (std::uint64_t i = 2; i <= n_max; ++i) out.emplace_back(p * out[i - 1] - q * out[i - 2]);
  return out;
}

namespace detail {

inline void require_modulus(std::uint64_t m) {
  if (m < 2) throw error(errc::domain, "modulus must be >= 2");
}

inline void require_modulus(const BigInt& m) {
  if (m < 2) throw error(errc::domain, "modulus must be >= 2");
}

}  // namespace detail

/// U_n mod m in [0, m).
inline std::uint64_t u_mod(const LucasParams& params, std::uint64_t n, std::uint64_t m) {
  detail::require_modulus(m);
  return u_pair(params, n, ring::Modular<std::uint64_t>{m}).first;
}

inline BigInt u_mod(const LucasParams& params, std::uint64_t n, const BigInt& m) {
  detail::require_modulus(m);
  return u_pair(params, n, ring::Modular<BigInt>{m}).first;
}

/// V_n mod m in [0, m).
inline std::uint64_t v_mod(const LucasParams& params, std::uint64_t n, std::uint64_t m) {
  detail::require_modulus(m);
  const ring::Modular<std::uint64_t> r{m};
  auto [un, un1] = u_pair(params, n, r);
  return v_from_pair(params, un, un1, r);
}

inline BigInt v_mod(const LucasParams& params, std::uint64_t n, const BigInt& m) {
  detail::require_modulus(m);
  const ring::Modular<BigInt> r{m};
  auto [un, un1] = u_pair(params, n, r);
  return v_from_pair(params, un, un1, r);
}

}  // namespace lucas
