#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lqw {

struct ReproOptions {
  std::optional<double> tolerance;  // overrides each table's Pr tolerance
  int threads = 1;
  std::int64_t max_vertices = 0;  // rows on larger grids are skipped; 0 runs everything
};

struct ReproRow {
  std::string label;
  int d = 0;
  int L = 0;
  int m = 0;
  std::optional<std::int64_t> published_T;  // absent when the table lists Pr only
  double published_Pr = 0.0;
  std::int64_t T = 0;
  double Pr = 0.0;
  std::optional<double> a;  // chosen factor for rows resolved by a sweep
  bool capped = false;
  bool skipped = false;
  bool T_ok = false;
  bool Pr_ok = false;

  bool pass() const noexcept { return skipped || (T_ok && Pr_ok); }
};

struct ReproReport {
  int table = 0;
  std::string title;
  double tolerance = 0.0;
  std::vector<ReproRow> rows;

  bool all_pass() const noexcept;
  std::size_t passed() const noexcept;
  std::size_t skipped() const noexcept;
};

/// The embedded reference values, keyed by table number.
const nlohmann::json& published_tables();
std::vector<int> available_tables();

/// Runs every configuration of `table` and compares T exactly and Pr within
/// the tolerance. Throws InvalidConfig for an unknown table.
ReproReport reproduce(int table, const ReproOptions& options = {});

/// Same, restricted to rows whose label passes `keep`.
ReproReport reproduce_rows(int table, const ReproOptions& options, const std::function<bool(const std::string&)>& keep);

void print_report(std::ostream& out, const ReproReport& report);

}  // namespace lqw
