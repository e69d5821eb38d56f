// Prints M^F_n for small n next to its factorization and the clause that
// predicts each prime's exponent.

#include "lucas/lucas.hpp"

#include <iostream>

int main() {
  const lucas::LucasParams fib = lucas::fibonacci_params();
  lucas::ValuationLaws laws(fib);
  for (std::uint64_t n = 2; n <= 30; ++n) {
    const lucas::BigInt m = lucas::dual_u(fib, n);
    std::cout << "M_" << n << " = " << m;
    for (const auto& t : lucas::factorize(m)) {
      const auto p = static_cast<std::uint64_t>(t.prime);
      const auto r = laws.dual_u(p, n);
      std::cout << "  " << p << "^" << t.exponent << " [" << lucas::to_string(r.branch) << ": " << r.exponent << "]";
    }
    std::cout << '\n';
  }
}
