#include "lqw/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>

#include "lqw/error.hpp"

namespace lqw {

namespace {

using json = nlohmann::json;

RunRecord make_record(const ExperimentConfig& config, const MarkedSet& marked, double l, const RunResult& result,
                      double seconds) {
  RunRecord r;
  r.label = config.label;
  r.d = config.grid.dims();
  r.L = config.grid.side();
  r.N = config.grid.size();
  r.m = static_cast<int>(marked.size());
  r.l = l;
  r.rule = std::string(to_string(config.rule));
  r.placement = std::string(placement_name(config.placement));
  r.weight = describe(config.weight);
  r.T = result.T;
  r.Pr = result.Pr;
  r.stopped_at = result.stopped_at;
  r.capped = result.capped;
  r.wall_time_seconds = seconds;
  r.seed = config.seed;
  return r;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config_error(std::string("config is missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("config field '") + key + "' has the wrong type: " + e.what());
  }
}

VertexCoord coord_from_json(const json& j) {
  try {
    return VertexCoord(j.get<std::vector<int>>());
  } catch (const json::exception&) {
    config_error("vertex coordinates must be arrays of integers");
  }
}

json coord_to_json(const VertexCoord& c) { return json(c.x); }

PlacementSpec placement_from_json(const json& j, const GridSpec& grid, std::optional<std::uint64_t>& seed) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "mset") return placement::MSet{field<int>(j, "m")};
  if (kind == "pset") return placement::PSet{field<int>(j, "m")};
  if (kind == "pdset") return placement::PDSet{field<int>(j, "m")};
  if (kind == "block") {
    placement::Block b{field<int>(j, "m"), VertexCoord{0, 0}};
    if (j.contains("origin")) b.origin = coord_from_json(j.at("origin"));
    return b;
  }
  if (kind == "explicit") {
    placement::Explicit e;
    for (const auto& v : field<json>(j, "vertices")) e.vertices.push_back(coord_from_json(v));
    return e;
  }
  if (kind == "random") {
    seed = field<std::uint64_t>(j, "seed");
    return random_placement(grid, field<int>(j, "m"), *seed);
  }
  config_error("unknown placement kind '" + kind + "' (expected mset, pset, pdset, block, explicit, random)");
}

json placement_to_json(const PlacementSpec& spec) {
  json j;
  j["kind"] = placement_name(spec);
  if (const auto* e = std::get_if<placement::Explicit>(&spec)) {
    j["vertices"] = json::array();
    for (const auto& v : e->vertices) j["vertices"].push_back(coord_to_json(v));
  } else {
    j["m"] = placement_count(spec);
    if (const auto* b = std::get_if<placement::Block>(&spec)) j["origin"] = coord_to_json(b->origin);
  }
  return j;
}

LoopWeightSpec weight_from_json(const json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (auto preset = parse_weight_preset(kind)) return LoopWeightSpec::preset(*preset);
  if (auto form = parse_factor_form(kind)) return {*form, field<double>(j, "a")};
  if (kind == "custom") return LoopWeightSpec::custom(field<double>(j, "l"));
  config_error("unknown weight kind '" + kind +
               "' (expected wong, nah-small, nah-large, saha, gen-ddim, per-n, per-density, custom)");
}

json weight_to_json(const LoopWeightSpec& w) {
  json j;
  j["kind"] = weight_kind_name(w.kind);
  if (w.kind == LoopWeightKind::FactorPerN || w.kind == LoopWeightKind::FactorPerDensity) j["a"] = w.value;
  if (w.kind == LoopWeightKind::Custom) j["l"] = w.value;
  return j;
}

StopRule rule_from_name(const std::string& name) {
  if (auto rule = parse_stop_rule(name)) return *rule;
  config_error("unknown stopping rule '" + name + "' (expected first-decline, two-step, inner-abs, inner-signed)");
}

void write_line(std::ostream& out, const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  out << buf << '\n';
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const MarkedSet marked = generate_placement(config.placement, config.grid);
  const double l = resolve_loop_weight(config.weight, config.grid, static_cast<int>(marked.size()));
  const std::int64_t cap = config.cap > 0 ? config.cap : default_cap(config.grid);
  RunResult result = run_until_stop(config.grid, marked, l, config.rule, cap, config.record_trajectory);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  RunOutput out;
  out.record = make_record(config, marked, l, result, elapsed.count());
  out.trajectory = std::move(result.trajectory);
  return out;
}

std::vector<double> sweep_lattice(double a_min, double a_max, double a_step) {
  if (!(a_step > 0.0) || !std::isfinite(a_step)) config_error("sweep step must be > 0");
  if (!(a_min <= a_max)) config_error("sweep lattice is empty: a_min > a_max");
  const auto count = static_cast<std::size_t>(std::floor((a_max - a_min) / a_step + 1e-9)) + 1;
  std::vector<double> lattice(count);
  for (std::size_t i = 0; i < count; ++i) lattice[i] = a_min + static_cast<double>(i) * a_step;
  return lattice;
}

SweepResult sweep_factor(const SweepConfig& sweep, int threads) {
  if (sweep.factor_form != LoopWeightKind::FactorPerN && sweep.factor_form != LoopWeightKind::FactorPerDensity) {
    config_error("sweep factor form must be per-n or per-density");
  }
  const auto lattice = sweep_lattice(sweep.a_min, sweep.a_max, sweep.a_step);
  auto runs = parallel_map<RunOutput>(lattice.size(), threads, [&](std::size_t i) {
    ExperimentConfig config = sweep.base;
    config.weight = {sweep.factor_form, lattice[i]};
    config.record_trajectory = false;
    return run_experiment(config);
  });

  SweepResult result;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i].record;
    result.points.push_back({lattice[i], r.l, r.T, r.Pr, r.stopped_at, r.capped});
    if (r.Pr > result.points[result.best].Pr) result.best = i;
  }
  result.best_record = runs[result.best].record;
  return result;
}

std::vector<RunRecord> density_series(const ExperimentConfig& base, const std::vector<int>& sides, int threads) {
  if (sides.empty()) config_error("density series needs at least one L value");
  return parallel_map<RunRecord>(sides.size(), threads, [&](std::size_t i) {
    ExperimentConfig config = base;
    config.grid = GridSpec(base.grid.dims(), sides[i]);
    config.record_trajectory = false;
    return run_experiment(config).record;
  });
}

placement::Explicit random_placement(const GridSpec& grid, int m, std::uint64_t seed) {
  if (m < 1 || m > grid.size()) {
    throw Error(ErrorCode::InvalidPlacement, "random placement needs 1 <= m <= N, got m=" + std::to_string(m));
  }
  std::mt19937_64 rng(seed);
  std::set<std::int64_t> taken;
  placement::Explicit out;
  const auto n = static_cast<std::uint64_t>(grid.size());
  while (out.vertices.size() < static_cast<std::size_t>(m)) {
    const auto v = static_cast<std::int64_t>(rng() % n);
    if (taken.insert(v).second) out.vertices.push_back(coord_of(v, grid));
  }
  return out;
}

int resolve_thread_count(std::optional<int> flag) {
  if (flag) return std::max(1, *flag);
  if (const char* env = std::getenv("LQW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_factor(double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", a);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "step,success_prob,inner_signed,inner_abs\n";
  for (const auto& r : trajectory.rows) {
    write_line(out, "%lld,%.17g,%.17g,%.17g", static_cast<long long>(r.step), r.success_prob, r.inner_signed,
               std::abs(r.inner_signed));
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "a,l,T,Pr,stopped_at,capped\n";
  for (const auto& p : sweep.points) {
    out << format_factor(p.a) << ',' << format_real(p.l) << ',' << p.T << ',' << format_probability(p.Pr) << ','
        << p.stopped_at << ',' << (p.capped ? "true" : "false") << '\n';
  }
}

void write_series_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "L,N,m,l,T,Pr,stopped_at,capped\n";
  for (const auto& r : records) {
    out << r.L << ',' << r.N << ',' << r.m << ',' << format_real(r.l) << ',' << r.T << ','
        << format_probability(r.Pr) << ',' << r.stopped_at << ',' << (r.capped ? "true" : "false") << '\n';
  }
}

void write_record_jsonl(std::ostream& out, const RunRecord& record) { out << to_json(record).dump() << '\n'; }

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

json to_json(const RunRecord& r) {
  json j = {{"label", r.label},       {"d", r.d},
            {"L", r.L},               {"N", r.N},
            {"m", r.m},               {"l", r.l},
            {"rule", r.rule},         {"placement", r.placement},
            {"weight", r.weight},     {"T", r.T},
            {"Pr", r.Pr},             {"stopped_at", r.stopped_at},
            {"capped", r.capped},     {"wall_time_seconds", r.wall_time_seconds}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

json to_json(const ExperimentConfig& c) {
  json j = {{"label", c.label},
            {"grid", {{"d", c.grid.dims()}, {"L", c.grid.side()}}},
            {"placement", placement_to_json(c.placement)},
            {"weight", weight_to_json(c.weight)},
            {"rule", to_string(c.rule)},
            {"cap", c.cap},
            {"record_trajectory", c.record_trajectory}};
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

json to_json(const SweepConfig& s) {
  return {{"base", to_json(s.base)},
          {"factor_form", weight_kind_name(s.factor_form)},
          {"a_min", s.a_min},
          {"a_max", s.a_max},
          {"a_step", s.a_step}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  const auto grid = field<json>(j, "grid");
  c.grid = GridSpec(field<int>(grid, "d"), field<int>(grid, "L"));
  c.placement = placement_from_json(field<json>(j, "placement"), c.grid, c.seed);
  c.weight = j.contains("weight") ? weight_from_json(j.at("weight")) : LoopWeightSpec{};
  c.rule = rule_from_name(j.value("rule", std::string("two-step")));
  c.cap = j.value("cap", std::int64_t{0});
  c.record_trajectory = j.value("record_trajectory", false);
  c.label = j.value("label", std::string("run"));
  if (c.label.empty()) config_error("label must be nonempty");
  if (c.cap != 0 && c.cap < 3) throw Error(ErrorCode::InvalidCap, "cap must be >= 3 (or 0 for the default)");
  return c;
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig s;
  s.base = experiment_config_from_json(field<json>(j, "base"));
  const auto form = field<std::string>(j, "factor_form");
  auto kind = parse_factor_form(form);
  if (!kind) config_error("unknown factor form '" + form + "' (expected per-n, per-density)");
  s.factor_form = *kind;
  s.a_min = field<double>(j, "a_min");
  s.a_max = field<double>(j, "a_max");
  s.a_step = field<double>(j, "a_step");
  sweep_lattice(s.a_min, s.a_max, s.a_step);
  return s;
}

}  // namespace lqw
