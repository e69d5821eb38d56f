#pragma once

/**
 * @file explorer.hpp
 * @brief Scanners built on the core: integrality of M^V, characteristic
 * factors, Wall-Sun-Sun primes and squarefreeness of M^F.
 *
 * Every scan partitions its keys into contiguous blocks, evaluates blocks
 * on worker threads, and writes each result into the slot owned by its key.
 * Rows are then collected in key order, so the report does not depend on
 * the thread count.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "dual.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "sequence.hpp"
#include "valuation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace lucas {

struct ScanOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  FactorBudget budget{};
  bool via_valuations = false;
};

/// Index bound beyond which a regular sequence may not have an integral
/// M^V_m (m even): 12 for D > 0, 30 for D < 0.
inline std::uint64_t integral_dual_v_index_bound(const LucasParams& params) {
  return params.discriminant() > 0 ? 12 : 30;
}

/// Largest index at which a regular U_n may lack a characteristic factor.
inline std::uint64_t characteristic_gap_bound(const LucasParams& params) {
  return params.discriminant() > 0 ? 12 : 30;
}

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

/// Applies fn to every key on `threads` workers; rows come back in key order.
inline std::vector<ScanRow> parallel_rows(const std::vector<std::uint64_t>& keys, unsigned threads,
                                          const std::function<std::optional<ScanRow>(std::uint64_t)>& fn) {
  std::vector<std::optional<ScanRow>> slots(keys.size());
  const unsigned workers = worker_count(threads, keys.size());
  std::vector<std::exception_ptr> failures(workers);
  auto run_block = [&](unsigned w) {
    const std::size_t begin = keys.size() * w / workers;
    const std::size_t end = keys.size() * (w + 1) / workers;
    try {
      for (std::size_t i = begin; i < end; ++i) slots[i] = fn(keys[i]);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    run_block(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::vector<ScanRow> rows;
  for (auto& s : slots) {
    if (s) rows.push_back(std::move(*s));
  }
  return rows;
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& t : factorize(n)) out.push_back(t.prime);
  return out;
}

template <class Int>
bool is_characteristic_mod(const LucasParams& params, const Int& q, std::uint64_t n) {
  if (u_mod(params, n, q) != 0) return false;
  for (std::uint64_t r : prime_factors(n)) {
    if (u_mod(params, n / r, q) == 0) return false;
  }
  return true;
}

}  // namespace detail

/// True when the prime q has entry point exactly n in U(P, Q).
///
/// For q !| Q the indices k with q | U_k are the multiples of the entry
/// point, so it suffices that q | U_n and q !| U_{n/r} for each prime r | n.
inline bool is_characteristic(const LucasParams& params, const BigInt& q, std::uint64_t n) {
  detail::require_positive(n, "is_characteristic");
  const bool divides_p = BigInt(params.p()) % q == 0;
  const bool divides_q = BigInt(params.q()) % q == 0;
  if (divides_p && divides_q) return n == 2;
  if (divides_q || n == 1) return false;
  if (q <= std::numeric_limits<std::uint64_t>::max() / 2) {
    return detail::is_characteristic_mod(params, static_cast<std::uint64_t>(q), n);
  }
  return detail::is_characteristic_mod(params, q, n);
}

/// Smallest characteristic prime of U_n, given a table with u_table[d] = U_d.
inline std::optional<BigInt> find_characteristic_factor(const LucasParams& params, std::span<const BigInt> u_table,
                                                        std::uint64_t n, const FactorBudget& budget = {}) {
  detail::require_positive(n, "find_characteristic_factor");
  if (n == 1) return std::nullopt;
  // Every characteristic prime of U_n divides M^U_n, which is far smaller.
  const BigInt primitive = dual_u(u_table, n);
  if (abs(primitive) == 1) return std::nullopt;
  for (const auto& t : factorize(primitive, budget)) {
    if (is_characteristic(params, t.prime, n)) return t.prime;
  }
  return std::nullopt;
}

inline std::optional<BigInt> find_characteristic_factor(const LucasParams& params, std::uint64_t n,
                                                        const FactorBudget& budget = {}) {
  detail::require_positive(n, "find_characteristic_factor");
  const auto table = sequence(params, SequenceKind::first, n);
  return find_characteristic_factor(params, table, n, budget);
}

/// Integrality of M^V_m (m even) decided from closed-form valuations.
///
/// Primes that can divide M^U_m are those dividing m, those dividing
/// gcd(P, Q), 2, and characteristic primes of index m. The first three
/// groups are checked one by one through v_p(M^V_m); stripping them from
/// M^U_m leaves the characteristic part, and any prime left there is odd
/// with v_q(M^U_{2m}) = 0, hence lands in the denominator.
inline bool integral_dual_v_via_valuations(ValuationLaws& laws, std::span<const BigInt> u_table, std::uint64_t m) {
  if (m % 2 != 0) return true;
  const LucasParams& params = laws.params();
  std::vector<std::uint64_t> candidates = detail::prime_factors(m);
  for (std::uint64_t p : detail::prime_factors(static_cast<std::uint64_t>(
           std::gcd(params.p() < 0 ? -params.p() : params.p(), params.q() < 0 ? -params.q() : params.q())))) {
    candidates.push_back(p);
  }
  candidates.push_back(2);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BigInt rest = abs(dual_u(u_table, m));
  for (std::uint64_t p : candidates) {
    const std::int64_t e = laws.dual_u(p, m).exponent;
    const BigInt power = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e));
    BigInt q, r;
    boost::multiprecision::divide_qr(rest, power, q, r);
    if (r != 0) throw std::logic_error("closed-form valuation disagrees with M^U_" + std::to_string(m));
    rest = std::move(q);
  }
  if (rest != 1) return false;
  return std::all_of(candidates.begin(), candidates.end(),
                     [&](std::uint64_t p) { return laws.dual_v(p, m).exponent >= 0; });
}

/// Even indices 2 <= m <= index_max with M^V_m integral.
inline ScanReport scan_integral_dual_v(const LucasParams& params, std::uint64_t index_max,
                                       const ScanOptions& options = {}) {
  if (index_max < 2) throw error(errc::domain, "scan-integral requires --max >= 2");
  detail::Stopwatch clock;
  ScanReport report{.kind = "scan-integral", .key_name = "n", .params = params};
  const std::uint64_t bound = integral_dual_v_index_bound(params);
  std::vector<std::uint64_t> keys;
  for (std::uint64_t m = 2; m <= index_max; m += 2) keys.push_back(m);

  const auto v_table = sequence(params, SequenceKind::second, index_max);
  const auto u_table = options.via_valuations ? sequence(params, SequenceKind::first, 2 * index_max)
                                              : std::vector<BigInt>{};
  auto row_for = [&](std::uint64_t m, const BigRat& value) {
    ScanRow row{.key = m, .value = to_decimal(value), .flags = {std::string(flag::integral)}};
    if (params.is_regular() && m > bound) row.flags.emplace_back(flag::theorem_violation);
    return row;
  };
  report.rows = detail::parallel_rows(keys, options.threads, [&](std::uint64_t m) -> std::optional<ScanRow> {
    if (options.via_valuations) {
      ValuationLaws laws(params);
      if (!integral_dual_v_via_valuations(laws, u_table, m)) return std::nullopt;
      return row_for(m, BigRat(dual_u(u_table, 2 * m)) / BigRat(dual_u(u_table, m)));
    }
    const DualValue dv = dual_v(v_table, m);
    if (!dv.integral) return std::nullopt;
    return row_for(m, dv.value);
  });
  report.metadata = {{"index_max", index_max},
                     {"route", options.via_valuations ? "valuations" : "direct"},
                     {"index_bound", bound},
                     {"index_bound_reading", "integral M^V_{2n} only for n <= 6 (D>0) / n <= 15 (D<0)"},
                     {"alternate_index_bound", 2 * bound},
                     {"alternate_reading", "thresholds 12 / 30 applied to n rather than to the index 2n"},
                     {"bound_applies", params.is_regular()}};
  report.elapsed_seconds = clock.seconds();
  return report;
}

/// Indices n <= n_max at which U_n has no characteristic factor.
inline ScanReport characteristic_gap_scan(const LucasParams& params, std::uint64_t n_max,
                                          const ScanOptions& options = {}) {
  detail::require_positive(n_max, "gap-scan");
  detail::Stopwatch clock;
  ScanReport report{.kind = "gap-scan", .key_name = "n", .params = params};
  const std::uint64_t bound = characteristic_gap_bound(params);
  std::vector<std::uint64_t> keys(n_max);
  for (std::uint64_t i = 0; i < n_max; ++i) keys[i] = i + 1;
  const auto u_table = sequence(params, SequenceKind::first, n_max);

  report.rows = detail::parallel_rows(keys, options.threads, [&](std::uint64_t n) -> std::optional<ScanRow> {
    ScanRow row{.key = n, .value = to_decimal(u_table[n])};
    try {
      if (find_characteristic_factor(params, u_table, n, options.budget)) return std::nullopt;
    } catch (const error& e) {
      if (e.code() != errc::factorization_overflow) throw;
      row.flags.emplace_back(flag::unresolved);
      return row;
    }
    row.flags.emplace_back(flag::no_characteristic_factor);
    if (params.is_regular() && n > bound) row.flags.emplace_back(flag::theorem_violation);
    return row;
  });
  report.metadata = {{"n_max", n_max}, {"gap_bound", bound}, {"bound_applies", params.is_regular()}};
  report.elapsed_seconds = clock.seconds();
  return report;
}

/// v_p(F_{z(p)}) > 1, decided with arithmetic mod p and p^2 only.
inline bool is_wall_sun_sun(std::uint64_t p) {
  const LucasParams fib = fibonacci_params();
  const std::uint64_t z = *entry_point(fib, p).value;
  const auto square = static_cast<unsigned __int128>(p) * p;
  if (square <= std::numeric_limits<std::uint64_t>::max()) {
    return u_mod(fib, z, static_cast<std::uint64_t>(square)) == 0;
  }
  return u_mod(fib, z, BigInt(p) * p) == 0;
}

/// Wall-Sun-Sun primes up to prime_max (none are known).
inline ScanReport wss_scan(std::uint64_t prime_max, const ScanOptions& options = {}) {
  if (prime_max < 3) throw error(errc::domain, "wss requires --max >= 3");
  detail::Stopwatch clock;
  ScanReport report{.kind = "wss", .key_name = "prime", .params = fibonacci_params()};
  std::vector<std::uint64_t> keys;
  if (PrimeSieve::global().contains(prime_max)) {
    for (std::uint64_t p : PrimeSieve::global().primes()) {
      if (p > prime_max) break;
      keys.push_back(p);
    }
  } else {
    const PrimeSieve local(prime_max);
    keys = local.primes();
  }
  report.rows = detail::parallel_rows(keys, options.threads, [](std::uint64_t p) -> std::optional<ScanRow> {
    if (!is_wall_sun_sun(p)) return std::nullopt;
    return ScanRow{.key = p,
                   .value = std::to_string(*entry_point(fibonacci_params(), p).value),
                   .flags = {std::string(flag::wall_sun_sun)}};
  });
  report.metadata = {{"prime_max", prime_max}, {"primes_checked", keys.size()}};
  report.elapsed_seconds = clock.seconds();
  return report;
}

/// Indices n <= n_max with M^F_n not squarefree.
inline ScanReport squarefree_dual_scan(std::uint64_t n_max, const ScanOptions& options = {}) {
  detail::require_positive(n_max, "squarefree-scan");
  detail::Stopwatch clock;
  const LucasParams fib = fibonacci_params();
  ScanReport report{.kind = "squarefree-scan", .key_name = "n", .params = fib};
  std::vector<std::uint64_t> keys(n_max);
  for (std::uint64_t i = 0; i < n_max; ++i) keys[i] = i + 1;
  const auto f_table = sequence(fib, SequenceKind::first, n_max);

  report.rows = detail::parallel_rows(keys, options.threads, [&](std::uint64_t n) -> std::optional<ScanRow> {
    const BigInt m = dual_u(f_table, n);
    ScanRow row{.key = n, .value = to_decimal(m)};
    try {
      if (is_squarefree(m, options.budget)) return std::nullopt;
    } catch (const error& e) {
      if (e.code() != errc::factorization_overflow) throw;
      row.flags.emplace_back(flag::unresolved);
      return row;
    }
    row.flags.emplace_back(flag::not_squarefree);
    // Away from n = 6, a square factor can only come from a Wall-Sun-Sun prime.
    if (n != 6) row.flags.emplace_back(flag::wall_sun_sun);
    return row;
  });
  report.metadata = {{"n_max", n_max}};
  report.elapsed_seconds = clock.seconds();
  return report;
}

/// Compares the two Wall-Sun-Sun detection routes for every prime up to
/// prime_max: the modular test, and p^2 | M^F_{z(p)} on the exact dual value
/// together with the closed-form v_p(M^F_{z(p)}). Rows list disagreements.
inline ScanReport wss_cross_check(std::uint64_t prime_max, const ScanOptions& options = {}) {
  if (prime_max < 2) throw error(errc::domain, "cross-check requires prime_max >= 2");
  detail::Stopwatch clock;
  const LucasParams fib = fibonacci_params();
  ScanReport report{.kind = "wss-cross-check", .key_name = "prime", .params = fib};
  std::vector<std::uint64_t> keys;
  for (std::uint64_t p : PrimeSieve::global().primes()) {
    if (p > prime_max) break;
    keys.push_back(p);
  }
  report.rows = detail::parallel_rows(keys, options.threads, [&](std::uint64_t p) -> std::optional<ScanRow> {
    const std::uint64_t z = *entry_point(fib, p).value;
    const BigInt m = dual_u(fib, z);
    const std::int64_t exact = valuation(m, p);
    const ValuationResult closed = v_p_dual_u(fib, p, z);
    const bool modular_route = is_wall_sun_sun(p);
    const bool dual_route = exact >= 2;
    if (modular_route == dual_route && closed.exponent == exact) return std::nullopt;
    return ScanRow{.key = p,
                   .value = std::to_string(z),
                   .valuation = exact,
                   .branch = std::string(to_string(closed.branch)),
                   .flags = {std::string(flag::route_mismatch)}};
  });
  report.metadata = {{"prime_max", prime_max}, {"primes_checked", keys.size()}};
  report.elapsed_seconds = clock.seconds();
  return report;
}

}  // namespace lucas
