#pragma once

/**
 * @file report.hpp
 * @brief ScanReport rows and their TSV / JSON Lines serializations.
 *
 * Rows are kept sorted by key. Serialized rows never include timing, so two
 * runs with the same bounds produce byte-identical output; elapsed time is
 * only emitted with the metadata object on request.
 */

#include "bigint.hpp"
#include "sequence.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lucas {

namespace flag {
inline constexpr std::string_view theorem_violation = "THEOREM_VIOLATION";
inline constexpr std::string_view unresolved = "UNRESOLVED";
inline constexpr std::string_view integral = "INTEGRAL";
inline constexpr std::string_view non_integral = "NON_INTEGRAL";
inline constexpr std::string_view not_squarefree = "NOT_SQUAREFREE";
inline constexpr std::string_view wall_sun_sun = "WALL_SUN_SUN";
inline constexpr std::string_view no_characteristic_factor = "NO_CHARACTERISTIC_FACTOR";
inline constexpr std::string_view route_mismatch = "ROUTE_MISMATCH";
}  // namespace flag

struct ScanRow {
  std::uint64_t key = 0;
  std::optional<std::uint64_t> prime;  // valuation rows keyed by n also name their prime
  std::string value;
  std::optional<std::int64_t> valuation;
  std::string branch;
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

struct ScanReport {
  std::string kind;
  std::string key_name = "n";
  std::optional<LucasParams> params;
  std::vector<ScanRow> rows;
  nlohmann::json metadata = nlohmann::json::object();
  double elapsed_seconds = 0.0;

  bool any_flag(std::string_view f) const {
    return std::any_of(rows.begin(), rows.end(), [f](const ScanRow& r) { return r.has_flag(f); });
  }

  bool theorem_violation() const { return any_flag(flag::theorem_violation); }

  std::vector<std::uint64_t> keys() const {
    std::vector<std::uint64_t> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.key);
    return out;
  }
};

inline nlohmann::ordered_json row_to_json(const ScanReport& report, const ScanRow& row) {
  nlohmann::ordered_json out;
  out["kind"] = report.kind;
  if (report.params) {
    out["P"] = report.params->p();
    out["Q"] = report.params->q();
  }
  out[report.key_name] = row.key;
  if (row.prime) out["prime"] = *row.prime;
  out["value"] = row.value.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.value);
  out["valuation"] = row.valuation ? nlohmann::ordered_json(*row.valuation) : nlohmann::ordered_json(nullptr);
  out["branch"] = row.branch.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.branch);
  out["flags"] = row.flags;
  return out;
}

inline nlohmann::json metadata_to_json(const ScanReport& report, bool include_timing) {
  nlohmann::json out = report.metadata;
  out["kind"] = report.kind + ".meta";
  if (report.params) {
    out["P"] = report.params->p();
    out["Q"] = report.params->q();
    out["D"] = report.params->discriminant();
    out["regular"] = report.params->is_regular();
  }
  out["rows"] = report.rows.size();
  if (include_timing) out["elapsed_seconds"] = report.elapsed_seconds;
  return out;
}

/// One JSON object per row, newline terminated.
inline std::string to_json_lines(const ScanReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    out += row_to_json(report, row).dump();
    out += '\n';
  }
  return out;
}

/// Tab-separated rows under a header line; absent fields print as "-".
inline std::string to_tsv(const ScanReport& report) {
  std::ostringstream os;
  os << report.key_name << "\tvalue\tvaluation\tbranch\tflags\n";
  for (const auto& row : report.rows) {
    os << row.key << '\t' << (row.value.empty() ? "-" : row.value) << '\t';
    if (row.valuation) {
      os << *row.valuation;
    } else {
      os << '-';
    }
    os << '\t' << (row.branch.empty() ? "-" : row.branch) << '\t';
    if (row.flags.empty()) os << '-';
    for (std::size_t i = 0; i < row.flags.size(); ++i) os << (i ? "," : "") << row.flags[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace lucas
