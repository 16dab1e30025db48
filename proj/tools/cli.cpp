#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "lqw/error.hpp"
#include "lqw/evolution.hpp"
#include "lqw/experiment.hpp"
#include "lqw/placement.hpp"
#include "lqw/reproduce.hpp"
#include "lqw/walk_state.hpp"

namespace lqw::cli {

namespace {

// Bad flag combinations found after CLI11 has parsed the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::optional<int> dims;
  std::optional<int> side;
  std::optional<int> count;
  std::string placement;
  std::string origin;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::optional<std::string> preset;
  std::optional<double> loop_weight;
  std::optional<std::string> factor;
  std::string stop;
  std::optional<std::int64_t> cap;
  std::string record_path;
  std::string json_path;
  std::string out_path;
  std::string series;
};

void add_problem_flags(CLI::App* app, RunFlags& f) {
  app->add_option("-d,--dims", f.dims, "Number of grid dimensions d");
  app->add_option("-L,--side", f.side, "Vertices per dimension L");
  app->add_option("-m,--marked", f.count, "Number of marked vertices m");
  app->add_option("--placement", f.placement, "mset | pset | pdset | block | random | explicit:<file>");
  app->add_option("--origin", f.origin, "Block placement origin, e.g. 3,4");
  app->add_option("--seed", f.seed, "Seed for --placement random");
  app->add_option("--config", f.config_path, "JSON config file (replaces the problem flags)");
}

void add_weight_flags(CLI::App* app, RunFlags& f) {
  auto* preset = app->add_option("--weight-preset", f.preset, "wong | nah-small | nah-large | saha | gen-ddim");
  auto* explicit_l = app->add_option("--loop-weight", f.loop_weight, "Self-loop weight l");
  auto* factor = app->add_option("--factor", f.factor, "<per-n|per-density>:<a>");
  preset->excludes(explicit_l, factor);
  explicit_l->excludes(factor);
}

void add_stop_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--stop", f.stop, "first-decline | two-step | inner-abs | inner-signed");
  app->add_option("--cap", f.cap, "Step cap (default 20*ceil(sqrt(N(1+ln N))))");
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + item + "' is not an integer");
    }
  }
  return values;
}

placement::Explicit read_explicit(const std::string& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read explicit placement file '" + path + "'");
  placement::Explicit out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty() || line[0] == '#') continue;
    auto coords = parse_int_list(line, path + ":" + std::to_string(line_no));
    if (coords.size() != static_cast<std::size_t>(grid.dims())) {
      throw Error(ErrorCode::InvalidPlacement, path + ":" + std::to_string(line_no) + " has " +
                                                   std::to_string(coords.size()) + " components, expected d=" +
                                                   std::to_string(grid.dims()));
    }
    out.vertices.emplace_back(std::move(coords));
  }
  return out;
}

ExperimentConfig problem_from_flags(const RunFlags& f) {
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw UsageError("cannot read config file '" + f.config_path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file '" + f.config_path + "' is not valid JSON: " + e.what());
    }
    return experiment_config_from_json(j);
  }
  if (!f.dims || !f.side) throw UsageError("-d and -L are required (or pass --config)");
  if (f.placement.empty()) throw UsageError("--placement is required");

  ExperimentConfig c;
  c.grid = GridSpec(*f.dims, *f.side);
  const bool is_explicit = f.placement.rfind("explicit:", 0) == 0;
  if (!is_explicit && !f.count) throw UsageError("-m is required for --placement " + f.placement);
  if (f.count && *f.count < 1) throw UsageError("marked set must be nonempty (got -m " + std::to_string(*f.count) + ")");

  if (f.placement == "mset") {
    c.placement = placement::MSet{*f.count};
  } else if (f.placement == "pset") {
    c.placement = placement::PSet{*f.count};
  } else if (f.placement == "pdset") {
    c.placement = placement::PDSet{*f.count};
  } else if (f.placement == "block") {
    placement::Block b{*f.count, VertexCoord{0, 0}};
    if (!f.origin.empty()) b.origin = VertexCoord(parse_int_list(f.origin, "--origin"));
    c.placement = b;
  } else if (f.placement == "random") {
    if (!f.seed) throw UsageError("--placement random needs --seed");
    c.placement = random_placement(c.grid, *f.count, *f.seed);
    c.seed = f.seed;
  } else if (is_explicit) {
    c.placement = read_explicit(f.placement.substr(9), c.grid);
  } else {
    throw UsageError("unknown placement '" + f.placement + "' (expected mset, pset, pdset, block, random, explicit:<file>)");
  }
  return c;
}

LoopWeightSpec weight_from_flags(const RunFlags& f) {
  if (f.preset) {
    auto kind = parse_weight_preset(*f.preset);
    if (!kind) throw UsageError("unknown weight preset '" + *f.preset + "' (expected wong, nah-small, nah-large, saha, gen-ddim)");
    return LoopWeightSpec::preset(*kind);
  }
  if (f.loop_weight) return LoopWeightSpec::custom(*f.loop_weight);
  if (f.factor) {
    const auto colon = f.factor->find(':');
    auto form = parse_factor_form(f.factor->substr(0, colon));
    if (colon == std::string::npos || !form) {
      throw UsageError("--factor expects <per-n|per-density>:<a>, got '" + *f.factor + "'");
    }
    try {
      std::size_t used = 0;
      const std::string num = f.factor->substr(colon + 1);
      const double a = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      return {*form, a};
    } catch (const std::exception&) {
      throw UsageError("--factor: '" + f.factor->substr(colon + 1) + "' is not a number");
    }
  }
  throw UsageError("a self-loop weight is required: --weight-preset, --loop-weight or --factor");
}

StopRule rule_from_flags(const RunFlags& f) {
  if (f.stop.empty()) throw UsageError("--stop is required");
  auto rule = parse_stop_rule(f.stop);
  if (!rule) throw UsageError("unknown stopping rule '" + f.stop + "' (expected first-decline, two-step, inner-abs, inner-signed)");
  return *rule;
}

ExperimentConfig full_config(const RunFlags& f, bool with_weight) {
  ExperimentConfig c = problem_from_flags(f);
  if (f.config_path.empty()) {
    if (with_weight) c.weight = weight_from_flags(f);
    c.rule = rule_from_flags(f);
  } else if (!f.stop.empty()) {
    c.rule = rule_from_flags(f);
  }
  if (f.cap) {
    if (*f.cap < 3) throw Error(ErrorCode::InvalidCap, "--cap must be >= 3, got " + std::to_string(*f.cap));
    c.cap = *f.cap;
  }
  return c;
}

std::string run_line(std::int64_t T, double Pr) {
  return "T=" + std::to_string(T) + " Pr=" + format_probability(Pr);
}

int cmd_run(const RunFlags& flags, int threads, std::ostream& out) {
  RunFlags f = flags;
  std::vector<int> sides;
  if (!f.series.empty()) {
    sides = parse_int_list(f.series, "--series");
    if (sides.empty()) throw UsageError("--series needs at least one L");
    // the series supplies L; the first entry stands in for validation
    if (!f.side && f.config_path.empty()) f.side = sides.front();
  }
  ExperimentConfig config = full_config(f, true);

  if (!sides.empty()) {
    const auto records = density_series(config, sides, threads);
    if (f.out_path.empty()) {
      write_series_csv(out, records);
    } else {
      write_file(f.out_path, [&](std::ostream& os) { write_series_csv(os, records); });
    }
    if (!f.json_path.empty()) {
      write_file(f.json_path, [&](std::ostream& os) {
        for (const auto& r : records) write_record_jsonl(os, r);
      });
    }
    const bool any_capped = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.capped; });
    return any_capped ? kCapReached : kOk;
  }

  config.record_trajectory = config.record_trajectory || !f.record_path.empty();
  const auto result = run_experiment(config);
  out << run_line(result.record.T, result.record.Pr) << '\n';
  if (!f.record_path.empty()) {
    write_file(f.record_path, [&](std::ostream& os) { write_trajectory_csv(os, *result.trajectory); });
  }
  if (!f.json_path.empty()) {
    write_file(f.json_path, [&](std::ostream& os) { write_record_jsonl(os, result.record); });
  }
  return result.record.capped ? kCapReached : kOk;
}

int cmd_evolve(const RunFlags& f, std::int64_t steps, std::ostream& out) {
  ExperimentConfig config = problem_from_flags(f);
  if (f.config_path.empty()) config.weight = weight_from_flags(f);
  if (steps < 0) throw UsageError("--steps must be >= 0");

  const MarkedSet marked = generate_placement(config.placement, config.grid);
  const double l = resolve_loop_weight(config.weight, config.grid, static_cast<int>(marked.size()));
  WalkState state = initial_state(config.grid, l);
  Trajectory trajectory;
  Evolver(marked).evolve(state, steps, &trajectory);

  if (f.out_path.empty()) {
    write_trajectory_csv(out, trajectory);
  } else {
    write_file(f.out_path, [&](std::ostream& os) { write_trajectory_csv(os, trajectory); });
  }
  return kOk;
}

struct SweepFlags {
  std::string form;
  std::optional<double> a_min, a_max, a_step;
};

int cmd_sweep(const RunFlags& f, const SweepFlags& s, int threads, std::ostream& out) {
  SweepConfig sweep;
  sweep.base = full_config(f, false);
  if (s.form.empty()) throw UsageError("--factor-form is required");
  auto form = parse_factor_form(s.form);
  if (!form) throw UsageError("unknown factor form '" + s.form + "' (expected per-n, per-density)");
  if (!s.a_min || !s.a_max || !s.a_step) throw UsageError("--a-min, --a-max and --a-step are required");
  sweep.factor_form = *form;
  sweep.a_min = *s.a_min;
  sweep.a_max = *s.a_max;
  sweep.a_step = *s.a_step;
  if (!(sweep.a_step > 0.0) || sweep.a_min > sweep.a_max) {
    throw UsageError("empty sweep lattice: need a-step > 0 and a-min <= a-max");
  }

  const auto result = sweep_factor(sweep, threads);
  if (f.out_path.empty()) {
    write_sweep_csv(out, result);
  } else {
    write_file(f.out_path, [&](std::ostream& os) { write_sweep_csv(os, result); });
  }
  if (!f.json_path.empty()) {
    write_file(f.json_path, [&](std::ostream& os) { write_record_jsonl(os, result.best_record); });
  }
  const auto& best = result.points[result.best];
  out << "best a=" << format_factor(best.a) << ' ' << run_line(best.T, best.Pr) << '\n';
  return kOk;
}

int cmd_placement(const RunFlags& f, std::ostream& out) {
  const ExperimentConfig config = problem_from_flags(f);
  const MarkedSet marked = generate_placement(config.placement, config.grid);
  auto print = [&](std::ostream& os) {
    for (const auto& v : marked.vertices()) {
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << '\n';
    }
  };
  if (f.out_path.empty()) {
    print(out);
  } else {
    write_file(f.out_path, print);
  }
  return kOk;
}

int cmd_reproduce(int table, std::optional<double> tolerance, std::int64_t max_vertices, int threads,
                  std::ostream& out) {
  const auto ids = available_tables();
  if (std::find(ids.begin(), ids.end(), table) == ids.end()) {
    throw UsageError("unknown table " + std::to_string(table) + " (expected 1..6)");
  }
  ReproOptions options;
  options.tolerance = tolerance;
  options.threads = threads;
  options.max_vertices = max_vertices;
  const auto report = reproduce(table, options);
  print_report(out, report);
  return report.all_pass() ? kOk : kFailure;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return kUnwritablePath;
    case ErrorCode::NumericFailure: return kFailure;
    default: return kInvalidArguments;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lackadaisical quantum walk search on d-dimensional periodic grids", "lqw"};
  app.require_subcommand(1);
  std::optional<int> threads_flag;
  app.add_option("--threads", threads_flag, "Worker threads for sweeps and batches (env LQW_THREADS)");

  RunFlags run_flags, evolve_flags, sweep_flags, placement_flags;
  SweepFlags sweep_extra;
  std::int64_t steps = 0;
  int table = 0;
  std::optional<double> tolerance;
  std::int64_t max_vertices = 0;

  auto* run = app.add_subcommand("run", "Run one search until the stopping rule fires");
  add_problem_flags(run, run_flags);
  add_weight_flags(run, run_flags);
  add_stop_flags(run, run_flags);
  run->add_option("--record", run_flags.record_path, "Write the trajectory CSV here");
  run->add_option("--json", run_flags.json_path, "Write the run record (JSON lines) here");
  run->add_option("--series", run_flags.series, "Comma-separated L values: run a density series instead");
  run->add_option("--out", run_flags.out_path, "Series CSV path (default stdout)");

  auto* evolve = app.add_subcommand("evolve", "Write the step-by-step trajectory for a fixed number of steps");
  add_problem_flags(evolve, evolve_flags);
  add_weight_flags(evolve, evolve_flags);
  evolve->add_option("--steps", steps, "Number of steps")->required();
  evolve->add_option("--out", evolve_flags.out_path, "Trajectory CSV path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Sweep the multiplicative factor a of the self-loop weight");
  add_problem_flags(sweep, sweep_flags);
  add_stop_flags(sweep, sweep_flags);
  sweep->add_option("--factor-form", sweep_extra.form, "per-n (l = 4a/N) | per-density (l = a m/N)");
  sweep->add_option("--a-min", sweep_extra.a_min);
  sweep->add_option("--a-max", sweep_extra.a_max);
  sweep->add_option("--a-step", sweep_extra.a_step);
  sweep->add_option("--out", sweep_flags.out_path, "Sweep CSV path (default stdout)");
  sweep->add_option("--json", sweep_flags.json_path, "Write the best run record here");

  auto* place = app.add_subcommand("placement", "Print the marked vertices of a placement");
  add_problem_flags(place, placement_flags);
  place->add_option("--out", placement_flags.out_path, "Output path (default stdout)");

  auto* repro = app.add_subcommand("reproduce", "Compare computed results against a published table");
  repro->add_option("--table", table, "Table number 1..6")->required();
  repro->add_option("--tolerance", tolerance, "Override the Pr tolerance");
  repro->add_option("--max-vertices", max_vertices, "Skip rows on grids with more than this many vertices");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  }

  const int threads = resolve_thread_count(threads_flag);
  try {
    if (run->parsed()) return cmd_run(run_flags, threads, out);
    if (evolve->parsed()) return cmd_evolve(evolve_flags, steps, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_extra, threads, out);
    if (place->parsed()) return cmd_placement(placement_flags, out);
    if (repro->parsed()) return cmd_reproduce(table, tolerance, max_vertices, threads, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInvalidArguments;
}

}  // namespace lqw::cli
