#pragma once

/**
 * @file error.hpp
 * @brief Error type shared by every lucas component.
 *
 * All validation failures are reported by throwing lucas::error. The code()
 * identifies the failure class so callers (the CLI in particular) can map
 * it to an exit status without parsing messages.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace lucas {

enum class errc {
  domain,                 // argument outside the operation's domain (n = 0, x = 0, ...)
  not_prime,              // a prime argument was composite
  parameter_range,        // |P| or |Q| too large for the integer-only evaluation paths
  zero_parameter,         // P = 0 or Q = 0
  zero_discriminant,      // P^2 = 4Q
  degenerate,             // alpha/beta is a root of unity
  missing_divisor,        // generic dual: no term supplied for some d | n
  zero_term,              // generic dual: a term A_d was zero
  internal_non_integral,  // M^U_n came out non-integral; always a bug
  degenerate_recursion,   // reduced sequence U(p-free P, Q / p^2a) failed validation
  valuation_overflow,     // anchor valuation exceeded the escalation cap
  factorization_overflow  // factoring budget exhausted
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::domain: return "Domain";
    case errc::not_prime: return "NotPrime";
    case errc::parameter_range: return "ParameterRange";
    case errc::zero_parameter: return "ZeroParameter";
    case errc::zero_discriminant: return "ZeroDiscriminant";
    case errc::degenerate: return "Degenerate";
    case errc::missing_divisor: return "MissingDivisor";
    case errc::zero_term: return "ZeroTerm";
    case errc::internal_non_integral: return "InternalNonIntegral";
    case errc::degenerate_recursion: return "DegenerateRecursion";
    case errc::valuation_overflow: return "ValuationOverflow";
    case errc::factorization_overflow: return "FactorizationOverflow";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace lucas
