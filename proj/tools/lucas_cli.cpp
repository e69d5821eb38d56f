// lucas: command-line front end for Lucas sequences, Moebius duals and
// their p-adic valuations.
//
// Exit status: 0 success, 1 validation or usage error, 2 when a scan hits a
// THEOREM_VIOLATION row.

#include "lucas/lucas.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

struct Common {
  std::int64_t p = 1;
  std::int64_t q = -1;
  bool json = false;
  bool meta = false;
  unsigned threads = 0;
};

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "Lucas parameter P")->required();
  cmd->add_option("--q", c.q, "Lucas parameter Q")->required();
}

void add_output(CLI::App* cmd, Common& c) { cmd->add_flag("--json", c.json, "Emit JSON Lines instead of TSV"); }

void add_scan_output(CLI::App* cmd, Common& c) {
  add_output(cmd, c);
  cmd->add_flag("--meta", c.meta, "Also emit a metadata object (includes elapsed time)");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

lucas::ScanReport single(std::string kind, std::string key_name, const lucas::LucasParams& params, lucas::ScanRow row) {
  lucas::ScanReport report{.kind = std::move(kind), .key_name = std::move(key_name), .params = params};
  report.rows.push_back(std::move(row));
  return report;
}

int emit_scan(const lucas::ScanReport& report, const Common& c) {
  if (c.json) {
    if (c.meta) std::cout << lucas::metadata_to_json(report, true).dump() << '\n';
    std::cout << lucas::to_json_lines(report);
  } else {
    if (c.meta) std::cout << "# " << lucas::metadata_to_json(report, true).dump() << '\n';
    std::cout << lucas::to_tsv(report);
  }
  return report.theorem_violation() ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lucas sequences, Moebius duals and p-adic valuation laws"};
  app.require_subcommand(1);
  Common c;
  std::uint64_t n = 1;
  std::uint64_t prime = 2;
  std::uint64_t max = 0;
  std::string of = "u";
  bool via_valuations = false;

  auto* lucas_u = app.add_subcommand("lucas-u", "U_n(P,Q)");
  auto* lucas_v = app.add_subcommand("lucas-v", "V_n(P,Q)");
  auto* dual_u = app.add_subcommand("dual-u", "Moebius dual M^U_n");
  auto* dual_v = app.add_subcommand("dual-v", "Moebius dual M^V_n");
  for (auto* cmd : {lucas_u, lucas_v, dual_u, dual_v}) {
    add_params(cmd, c);
    cmd->add_option("--n", n, "Index")->required();
    add_output(cmd, c);
  }

  auto* val = app.add_subcommand("val", "Closed-form p-adic valuation with its clause label");
  add_params(val, c);
  val->add_option("--prime", prime, "Prime p")->required();
  val->add_option("--n", n, "Index")->required();
  val->add_option("--of", of, "Sequence: u, dual-u or dual-v")->check(CLI::IsMember({"u", "dual-u", "dual-v"}));
  add_output(val, c);

  auto* entry = app.add_subcommand("entry", "Entry point (rank of apparition) of a prime");
  add_params(entry, c);
  entry->add_option("--prime", prime, "Prime p")->required();
  add_output(entry, c);

  auto* scan_integral = app.add_subcommand("scan-integral", "Even indices with integral M^V");
  add_params(scan_integral, c);
  scan_integral->add_option("--max", max, "Largest index")->default_val(400);
  scan_integral->add_flag("--via-valuations", via_valuations, "Decide integrality from closed-form valuations");
  add_scan_output(scan_integral, c);

  auto* char_factor = app.add_subcommand("char-factor", "Smallest characteristic prime of U_n");
  add_params(char_factor, c);
  char_factor->add_option("--n", n, "Index")->required();
  add_output(char_factor, c);

  auto* gap_scan = app.add_subcommand("gap-scan", "Indices where U_n has no characteristic prime");
  add_params(gap_scan, c);
  gap_scan->add_option("--max", max, "Largest index")->default_val(60);
  add_scan_output(gap_scan, c);

  auto* wss = app.add_subcommand("wss", "Wall-Sun-Sun prime scan");
  wss->add_option("--max", max, "Prime bound")->default_val(1'000'000);
  add_scan_output(wss, c);

  auto* squarefree = app.add_subcommand("squarefree-scan", "Indices with non-squarefree M^F_n");
  squarefree->add_option("--max", max, "Largest index")->default_val(120);
  add_scan_output(squarefree, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    const lucas::ScanOptions options{.threads = c.threads, .via_valuations = via_valuations};
    auto params = [&] { return lucas::LucasParams::make(c.p, c.q); };

    if (*lucas_u || *lucas_v) {
      const auto ps = params();
      const bool first = static_cast<bool>(*lucas_u);
      const lucas::BigInt value = first ? lucas::u(ps, n) : lucas::v(ps, n);
      if (!c.json) {
        std::cout << value << '\n';
        return 0;
      }
      std::cout << lucas::to_json_lines(single(first ? "lucas-u" : "lucas-v", "n", ps, {.key = n, .value = value.str()}));
      return 0;
    }
    if (*dual_u || *dual_v) {
      const auto ps = params();
      const bool first = static_cast<bool>(*dual_u);
      const lucas::BigRat value = first ? lucas::BigRat(lucas::dual_u(ps, n)) : lucas::dual_v(ps, n).value;
      const bool integral = lucas::is_integral(value);
      if (!c.json) {
        std::cout << lucas::to_decimal(value) << '\t' << (integral ? "true" : "false") << '\n';
        return 0;
      }
      lucas::ScanRow row{.key = n,
                         .value = lucas::to_decimal(value),
                         .flags = {std::string(integral ? lucas::flag::integral : lucas::flag::non_integral)}};
      std::cout << lucas::to_json_lines(single(first ? "dual-u" : "dual-v", "n", ps, row));
      return 0;
    }
    if (*val) {
      lucas::ValuationLaws laws(params());
      const lucas::ValuationResult r =
          of == "u" ? laws.u(prime, n) : (of == "dual-u" ? laws.dual_u(prime, n) : laws.dual_v(prime, n));
      const std::string branch(lucas::to_string(r.branch));
      if (!c.json) {
        std::cout << r.exponent << '\t' << branch << '\n';
        return 0;
      }
      lucas::ScanRow row{.key = n, .prime = prime, .valuation = r.exponent, .branch = branch};
      std::cout << lucas::to_json_lines(single("val-" + of, "n", laws.params(), row));
      return 0;
    }
    if (*entry) {
      const auto ps = params();
      const lucas::EntryPoint e = lucas::entry_point(ps, prime);
      const std::string value = e.value ? std::to_string(*e.value) : "none";
      const std::string branch(lucas::to_string(e.branch));
      if (!c.json) {
        std::cout << value << '\t' << branch << '\n';
        return 0;
      }
      lucas::ScanRow row{.key = prime, .value = e.value ? value : "", .branch = branch};
      std::cout << lucas::to_json_lines(single("entry", "prime", ps, row));
      return 0;
    }
    if (*char_factor) {
      const auto ps = params();
      const auto found = lucas::find_characteristic_factor(ps, n);
      if (!c.json) {
        std::cout << (found ? found->str() : "none") << '\n';
        return 0;
      }
      lucas::ScanRow row{.key = n, .value = found ? found->str() : ""};
      if (!found) row.flags.emplace_back(lucas::flag::no_characteristic_factor);
      std::cout << lucas::to_json_lines(single("char-factor", "n", ps, row));
      return 0;
    }
    if (*scan_integral) return emit_scan(lucas::scan_integral_dual_v(params(), max, options), c);
    if (*gap_scan) return emit_scan(lucas::characteristic_gap_scan(params(), max, options), c);
    if (*wss) return emit_scan(lucas::wss_scan(max, options), c);
    if (*squarefree) return emit_scan(lucas::squarefree_dual_scan(max, options), c);
  } catch (const lucas::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
