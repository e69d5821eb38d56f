#pragma once

/**
 * @file valuation.hpp
 * @brief Closed-form p-adic valuations of U_n, M^U_n and M^V_n, and entry points.
 *
 * For a prime p the behaviour of v_p(U_n) falls into one of five regimes:
 *
 *   (a) p | Q, p !| P                 p never divides U_n
 *   (b) p | D, p !| Q                 entry point p
 *   (c) p !| QD                       entry point z | p - (D/p), or 3 when p = 2
 *   (d) p | (P,Q), v_p(Q) >= 2v_p(P)  reduce to U(P / p^a, Q / p^2a), a = v_p(P)
 *   (e) p | (P,Q), v_p(Q) <  2v_p(P)  explicit parity formulas
 *
 * Regimes (a)-(c) need at most three anchor valuations, v_p(U_p), v_p(U_z)
 * and v_p(U_{pz}). These are read from U_k mod p^e for escalating
 * e = 3, 6, 12, ... up to 64, so that no term is ever expanded in full.
 *
 * Every result carries the clause that produced it. ValuationLaws memoizes
 * per-prime data (regime, entry point, anchors) and is not safe to share
 * between threads; give each thread its own instance.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "error.hpp"
#include "sequence.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lucas {

enum class EntryBranch { none_p_divides_q, p_divides_gcd, p_divides_discriminant, generic, two_not_dividing_discriminant };

constexpr std::string_view to_string(EntryBranch b) noexcept {
  switch (b) {
    case EntryBranch::none_p_divides_q: return "NONE_P_DIVIDES_Q";
    case EntryBranch::p_divides_gcd: return "P_DIVIDES_GCD";
    case EntryBranch::p_divides_discriminant: return "P_DIVIDES_D";
    case EntryBranch::generic: return "GENERIC";
    case EntryBranch::two_not_dividing_discriminant: return "TWO_NOT_DIVIDING_D";
  }
  return "?";
}

/// Rank of apparition of a prime; value is empty exactly for none_p_divides_q.
struct EntryPoint {
  std::uint64_t prime;
  std::optional<std::uint64_t> value;
  EntryBranch branch;
};

enum class Clause {
  // v_p(U_n)
  u_a,
  u_b_multiple,
  u_b_coprime,
  u_c_multiple_of_pz,
  u_c_multiple_of_z,
  u_c_other,
  u_d,
  u_e_odd,
  u_e_even,
  u_e_even_corrected,
  // v_p(M^U_n)
  dual_a,
  dual_b_prime,
  dual_b_prime_power,
  dual_b_other,
  dual_c_entry,
  dual_c_p_entry,
  dual_c_power_entry,
  dual_c_other,
  dual_d_one,
  dual_d_reduced,
  dual_e_two,
  dual_e_twice_prime_power,
  dual_e_other,
  dual_e_exceptional,
  // v_p(M^V_n)
  dual_v_doubling
};

constexpr std::string_view to_string(Clause c) noexcept {
  switch (c) {
    case Clause::u_a: return "a";
    case Clause::u_b_multiple: return "b.1";
    case Clause::u_b_coprime: return "b.2";
    case Clause::u_c_multiple_of_pz: return "c.1";
    case Clause::u_c_multiple_of_z: return "c.2";
    case Clause::u_c_other: return "c.3";
    case Clause::u_d: return "d";
    case Clause::u_e_odd: return "e.odd";
    case Clause::u_e_even: return "e.even";
    case Clause::u_e_even_corrected: return "e.even+h";
    case Clause::dual_a: return "a";
    case Clause::dual_b_prime: return "b.1";
    case Clause::dual_b_prime_power: return "b.2";
    case Clause::dual_b_other: return "b.3";
    case Clause::dual_c_entry: return "c.1";
    case Clause::dual_c_p_entry: return "c.2";
    case Clause::dual_c_power_entry: return "c.3";
    case Clause::dual_c_other: return "c.4";
    case Clause::dual_d_one: return "d.1";
    case Clause::dual_d_reduced: return "d.2";
    case Clause::dual_e_two: return "e.1";
    case Clause::dual_e_twice_prime_power: return "e.2";
    case Clause::dual_e_other: return "e.3";
    case Clause::dual_e_exceptional: return "e.exceptional";
    case Clause::dual_v_doubling: return "doubling";
  }
  return "?";
}

struct ValuationResult {
  std::int64_t exponent;
  Clause branch;
};

/// Escalation schedule for anchor valuations: U_k is reduced mod p^e for each e in turn.
inline constexpr std::array<unsigned, 6> anchor_exponents{3, 6, 12, 24, 48, 64};

/// v_p(U_index) by modular evaluation at p^e; U_index must be nonzero.
inline std::int64_t anchor_valuation(const LucasParams& params, std::uint64_t p, std::uint64_t index) {
  detail::require_prime(p);
  for (unsigned e : anchor_exponents) {
    BigInt modulus = boost::multiprecision::pow(BigInt(p), e);
    if (modulus < (BigInt(1) << 63)) {
      const std::uint64_t r = u_mod(params, index, static_cast<std::uint64_t>(modulus));
      if (r != 0) return valuation(static_cast<std::int64_t>(r), p);
    } else {
      const BigInt r = u_mod(params, index, modulus);
      if (r != 0) return valuation(r, p);
    }
  }
  throw error(errc::valuation_overflow, "v_" + std::to_string(p) + "(U_" + std::to_string(index) +
                                            ") exceeds " + std::to_string(anchor_exponents.back()));
}

inline EntryPoint entry_point(const LucasParams& params, std::uint64_t p) {
  detail::require_prime(p);
  const bool divides_p = modular::reduce(params.p(), p) == 0;
  const bool divides_q = modular::reduce(params.q(), p) == 0;
  if (divides_p && divides_q) return {p, 2, EntryBranch::p_divides_gcd};
  if (divides_q) return {p, std::nullopt, EntryBranch::none_p_divides_q};
  if (modular::reduce(params.discriminant(), p) == 0) return {p, p, EntryBranch::p_divides_discriminant};
  if (p == 2) return {p, 3, EntryBranch::two_not_dividing_discriminant};
  const std::uint64_t order_bound = kronecker(params.discriminant(), p) == 1 ? p - 1 : p + 1;
  for (std::uint64_t d : divisors(order_bound)) {
    if (u_mod(params, d, p) == 0) return {p, d, EntryBranch::generic};
  }
  throw std::logic_error("no entry point found below p - (D/p) for p = " + std::to_string(p));
}

class ValuationLaws {
 public:
  explicit ValuationLaws(LucasParams params) : params_(params) {}

  const LucasParams& params() const noexcept { return params_; }

  EntryPoint entry_point(std::uint64_t p) { return context(p).entry; }

  ValuationResult u(std::uint64_t p, std::uint64_t n) {
    detail::require_positive(n, "v_p(U_n)");
    const PrimeContext& ctx = context(p);
    switch (ctx.regime) {
      case Regime::a:
        return {0, Clause::u_a};
      case Regime::b:
        if (n % p != 0) return {0, Clause::u_b_coprime};
        return {ctx.anchor_p + valuation(static_cast<std::int64_t>(n), p) - 1, Clause::u_b_multiple};
      case Regime::c: {
        const std::uint64_t z = *ctx.entry.value;
        if (n % z != 0) return {0, Clause::u_c_other};
        if (n % p != 0) return {ctx.anchor_z, Clause::u_c_multiple_of_z};
        return {ctx.anchor_pz + valuation(static_cast<std::int64_t>(n), p) - 1, Clause::u_c_multiple_of_pz};
      }
      case Regime::d: {
        const auto inner = ctx.reduced->u(p, n);
        return {static_cast<std::int64_t>(n - 1) * ctx.vp_p + inner.exponent, Clause::u_d};
      }
      case Regime::e: {
        const auto nn = static_cast<std::int64_t>(n);
        if (n % 2 == 1) return {ctx.vp_q * (nn - 1) / 2, Clause::u_e_odd};
        const std::uint64_t half = n / 2;
        std::int64_t exponent = ctx.vp_q * (nn / 2) + valuation(static_cast<std::int64_t>(half), p) + ctx.vp_p - ctx.vp_q;
        // The correction enters once p divides n/2, not merely n: at n = 2
        // the value is always v_p(P).
        if (ctx.corrected_prime && half % p == 0) return {exponent + ctx.h, Clause::u_e_even_corrected};
        return {exponent, Clause::u_e_even};
      }
    }
    throw std::logic_error("unreachable valuation regime");
  }

  ValuationResult dual_u(std::uint64_t p, std::uint64_t n) {
    detail::require_positive(n, "v_p(M^U_n)");
    const PrimeContext& ctx = context(p);
    switch (ctx.regime) {
      case Regime::a:
        return {0, Clause::dual_a};
      case Regime::b: {
        if (n == p) return {ctx.anchor_p, Clause::dual_b_prime};
        if (power_of(n, p) > 1) return {1, Clause::dual_b_prime_power};
        return {0, Clause::dual_b_other};
      }
      case Regime::c: {
        const std::uint64_t z = *ctx.entry.value;
        if (n == z) return {ctx.anchor_z, Clause::dual_c_entry};
        if (n % z == 0) {
          const unsigned k = power_of(n / z, p);
          if (k == 1) return {ctx.anchor_pz - ctx.anchor_z, Clause::dual_c_p_entry};
          if (k > 1) return {1, Clause::dual_c_power_entry};
        }
        return {0, Clause::dual_c_other};
      }
      case Regime::d: {
        if (n == 1) return {0, Clause::dual_d_one};
        const auto inner = ctx.reduced->dual_u(p, n);
        return {static_cast<std::int64_t>(totient(n)) * ctx.vp_p + inner.exponent, Clause::dual_d_reduced};
      }
      case Regime::e: {
        if (n == 2) return {ctx.vp_p, Clause::dual_e_two};
        if (ctx.corrected_prime && n == 2 * p) return {ctx.vp_q + 1 + ctx.h, Clause::dual_e_exceptional};
        const auto phi = static_cast<std::int64_t>(totient(n));
        if (n % 2 == 0 && power_of(n / 2, p) >= 1) return {phi / 2 * ctx.vp_q + 1, Clause::dual_e_twice_prime_power};
        return {phi / 2 * ctx.vp_q, Clause::dual_e_other};
      }
    }
    throw std::logic_error("unreachable valuation regime");
  }

  /// v_p(M^V_n) = v_p(M^U_{2n}) - [n even] v_p(M^U_n); negative when p divides the denominator.
  ValuationResult dual_v(std::uint64_t p, std::uint64_t n) {
    detail::require_positive(n, "v_p(M^V_n)");
    std::int64_t exponent = dual_u(p, 2 * n).exponent;
    if (n % 2 == 0) exponent -= dual_u(p, n).exponent;
    return {exponent, Clause::dual_v_doubling};
  }

 private:
  enum class Regime { a, b, c, d, e };

  struct PrimeContext {
    Regime regime;
    EntryPoint entry;
    std::int64_t vp_p = 0;
    std::int64_t vp_q = 0;
    std::int64_t anchor_p = 0;   // v_p(U_p), regime b
    std::int64_t anchor_z = 0;   // v_p(U_z), regime c
    std::int64_t anchor_pz = 0;  // v_p(U_{pz}), regime c
    bool corrected_prime = false;  // regime e with p in {2,3} and v_p(Q) = 2v_p(P) - 1
    std::int64_t h = 0;            // v_p(P'^2 - Q') for p-free parts P', Q'
    std::shared_ptr<ValuationLaws> reduced{};
  };

  /// k if m = p^k, else 0 (m = 1 gives 0 too).
  static unsigned power_of(std::uint64_t m, std::uint64_t p) {
    unsigned k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    return m == 1 ? k : 0;
  }

  const PrimeContext& context(std::uint64_t p) {
    if (auto it = cache_.find(p); it != cache_.end()) return it->second;
    detail::require_prime(p);
    PrimeContext ctx{.regime = Regime::a, .entry = lucas::entry_point(params_, p)};
    const std::int64_t big_p = params_.p();
    const std::int64_t big_q = params_.q();
    const bool divides_p = big_p % static_cast<std::int64_t>(p) == 0;
    const bool divides_q = big_q % static_cast<std::int64_t>(p) == 0;
    if (divides_p && divides_q) {
      ctx.vp_p = valuation(big_p, p);
      ctx.vp_q = valuation(big_q, p);
      if (ctx.vp_q >= 2 * ctx.vp_p) {
        ctx.regime = Regime::d;
        ctx.reduced = std::make_shared<ValuationLaws>(reduced_params(p, ctx.vp_p));
      } else {
        ctx.regime = Regime::e;
        ctx.corrected_prime = p <= 3 && ctx.vp_q == 2 * ctx.vp_p - 1;
        if (ctx.corrected_prime) {
          const BigInt free_p = p_free_part(BigInt(big_p), p);
          const BigInt free_q = p_free_part(BigInt(big_q), p);
          const BigInt diff = free_p * free_p - free_q;
          // diff = 0 would force P^2 = pQ, a degenerate pair.
          if (diff == 0) throw std::logic_error("vanishing correction term for accepted parameters");
          ctx.h = valuation(diff, p);
        }
      }
    } else if (divides_q) {
      ctx.regime = Regime::a;
    } else if (ctx.entry.branch == EntryBranch::p_divides_discriminant) {
      ctx.regime = Regime::b;
      ctx.anchor_p = anchor_valuation(params_, p, p);
    } else {
      ctx.regime = Regime::c;
      const std::uint64_t z = *ctx.entry.value;
      ctx.anchor_z = anchor_valuation(params_, p, z);
      ctx.anchor_pz = anchor_valuation(params_, p, p * z);
    }
    return cache_.emplace(p, std::move(ctx)).first->second;
  }

  // U_n(P,Q) = p^{a(n-1)} U_n(P / p^a, Q / p^{2a}) when v_p(Q) >= 2a.
  LucasParams reduced_params(std::uint64_t p, std::int64_t a) const {
    std::int64_t scale = 1;
    for (std::int64_t i = 0; i < a; ++i) scale *= static_cast<std::int64_t>(p);
    try {
      return LucasParams::make(params_.p() / scale, params_.q() / (scale * scale));
    } catch (const error& e) {
      throw error(errc::degenerate_recursion, "reduced sequence for p = " + std::to_string(p) + ": " + e.what());
    }
  }

  LucasParams params_;
  std::map<std::uint64_t, PrimeContext> cache_;
};

inline ValuationResult v_p_u(const LucasParams& params, std::uint64_t p, std::uint64_t n) {
  return ValuationLaws(params).u(p, n);
}

inline ValuationResult v_p_dual_u(const LucasParams& params, std::uint64_t p, std::uint64_t n) {
  return ValuationLaws(params).dual_u(p, n);
}

inline std::int64_t v_p_dual_v(const LucasParams& params, std::uint64_t p, std::uint64_t n) {
  return ValuationLaws(params).dual_v(p, n).exponent;
}

}  // namespace lucas
