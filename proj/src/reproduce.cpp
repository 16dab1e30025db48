#include "lqw/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "lqw/error.hpp"
#include "lqw/experiment.hpp"

namespace lqw {

namespace {

using json = nlohmann::json;

constexpr const char* kTablesText =
#include "published_tables.inc"
    ;

PlacementSpec placement_for(const std::string& kind, int m) {
  if (kind == "mset") return placement::MSet{m};
  if (kind == "pset") return placement::PSet{m};
  if (kind == "pdset") return placement::PDSet{m};
  throw Error(ErrorCode::InvalidConfig, "fixture uses unsupported placement '" + kind + "'");
}

ReproRow run_row(const json& spec, double tolerance, const ReproOptions& options) {
  ReproRow row;
  row.label = spec.at("label").get<std::string>();
  row.d = spec.at("d").get<int>();
  row.L = spec.at("L").get<int>();
  row.m = spec.at("m").get<int>();
  if (!spec.at("T").is_null()) row.published_T = spec.at("T").get<std::int64_t>();
  row.published_Pr = spec.at("Pr").get<double>();

  ExperimentConfig config;
  config.grid = GridSpec(row.d, row.L);
  config.placement = placement_for(spec.at("placement").get<std::string>(), row.m);
  config.rule = *parse_stop_rule(spec.at("rule").get<std::string>());
  config.label = row.label;

  if (options.max_vertices > 0 && config.grid.size() > options.max_vertices) {
    row.skipped = true;
    return row;
  }

  const auto& weight = spec.at("weight");
  if (weight.at("kind") == "sweep") {
    SweepConfig sweep;
    sweep.base = config;
    sweep.factor_form = *parse_factor_form(weight.at("form").get<std::string>());
    sweep.a_min = weight.at("a_min").get<double>();
    sweep.a_max = weight.at("a_max").get<double>();
    sweep.a_step = weight.at("a_step").get<double>();
    const auto result = sweep_factor(sweep);
    const auto& best = result.points[result.best];
    row.T = best.T;
    row.Pr = best.Pr;
    row.capped = best.capped;
    row.a = best.a;
  } else {
    config.weight = LoopWeightSpec::preset(*parse_weight_preset(weight.at("kind").get<std::string>()));
    const auto out = run_experiment(config);
    row.T = out.record.T;
    row.Pr = out.record.Pr;
    row.capped = out.record.capped;
  }
  row.T_ok = !row.published_T || *row.published_T == row.T;
  row.Pr_ok = std::abs(row.Pr - row.published_Pr) <= tolerance;
  return row;
}

}  // namespace

bool ReproReport::all_pass() const noexcept {
  for (const auto& r : rows) {
    if (!r.pass()) return false;
  }
  return true;
}

std::size_t ReproReport::passed() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows) n += (!r.skipped && r.pass()) ? 1 : 0;
  return n;
}

std::size_t ReproReport::skipped() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.skipped ? 1 : 0;
  return n;
}

const json& published_tables() {
  static const json tables = json::parse(kTablesText).at("tables");
  return tables;
}

std::vector<int> available_tables() {
  std::vector<int> ids;
  for (const auto& [key, _] : published_tables().items()) ids.push_back(std::stoi(key));
  return ids;
}

ReproReport reproduce(int table, const ReproOptions& options) {
  return reproduce_rows(table, options, [](const std::string&) { return true; });
}

ReproReport reproduce_rows(int table, const ReproOptions& options,
                           const std::function<bool(const std::string&)>& keep) {
  const auto key = std::to_string(table);
  if (!published_tables().contains(key)) {
    throw Error(ErrorCode::InvalidConfig, "unknown table " + key + " (expected 1..6)");
  }
  const auto& spec = published_tables().at(key);

  ReproReport report;
  report.table = table;
  report.title = spec.at("title").get<std::string>();
  report.tolerance = options.tolerance.value_or(spec.at("pr_tolerance").get<double>());

  std::vector<json> selected;
  for (const auto& row : spec.at("rows")) {
    if (keep(row.at("label").get<std::string>())) selected.push_back(row);
  }
  report.rows = parallel_map<ReproRow>(selected.size(), options.threads, [&](std::size_t i) {
    return run_row(selected[i], report.tolerance, options);
  });
  return report;
}

void print_report(std::ostream& out, const ReproReport& report) {
  char buf[256];
  out << "Table " << report.table << ": " << report.title << '\n';
  std::snprintf(buf, sizeof buf, "Pr tolerance %.1e, T exact\n", report.tolerance);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-28s %8s %10s %8s %10s %10s  %s\n", "row", "T pub", "Pr pub", "T", "Pr", "a",
                "status");
  out << buf;
  for (const auto& r : report.rows) {
    const std::string t_pub = r.published_T ? std::to_string(*r.published_T) : "-";
    if (r.skipped) {
      std::snprintf(buf, sizeof buf, "%-28s %8s %10.6f %8s %10s %10s  SKIP\n", r.label.c_str(), t_pub.c_str(),
                    r.published_Pr, "-", "-", "-");
    } else {
      const std::string a = r.a ? format_factor(*r.a) : "-";
      std::snprintf(buf, sizeof buf, "%-28s %8s %10.6f %8lld %10.6f %10s  %s%s\n", r.label.c_str(), t_pub.c_str(),
                    r.published_Pr, static_cast<long long>(r.T), r.Pr, a.c_str(), r.pass() ? "PASS" : "FAIL",
                    r.capped ? " (capped)" : "");
    }
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%zu/%zu rows pass", report.passed(), report.rows.size() - report.skipped());
  out << buf;
  if (report.skipped()) out << ", " << report.skipped() << " skipped";
  out << '\n';
}

}  // namespace lqw
