/*
 * experiment.hpp - config-driven runs, factor sweeps and density series.
 *
 * Output formats:
 *   trajectory CSV   step,success_prob,inner_signed,inner_abs
 *   sweep CSV        a,l,T,Pr,stopped_at,capped
 *   series CSV       L,N,m,l,T,Pr,stopped_at,capped
 *   run records      JSON lines, full double precision
 *
 * CSV files print Pr with 6 decimals and every other real with enough
 * digits to round-trip, so identical configs give byte-identical files.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqw/grid.hpp"
#include "lqw/placement.hpp"
#include "lqw/stopping.hpp"
#include "lqw/trajectory.hpp"

namespace lqw {

struct ExperimentConfig {
  GridSpec grid{2, 2};
  PlacementSpec placement = placement::PDSet{1};
  LoopWeightSpec weight;
  StopRule rule = StopRule::TwoStepLookback;
  std::int64_t cap = 0;  // 0 selects default_cap(grid)
  bool record_trajectory = false;
  std::string label = "run";
  std::optional<std::uint64_t> seed;  // set when the placement came from random_placement
};

struct RunRecord {
  std::string label;
  int d = 0;
  int L = 0;
  std::int64_t N = 0;
  int m = 0;
  double l = 0.0;
  std::string rule;
  std::string placement;
  std::string weight;
  std::int64_t T = 0;
  double Pr = 0.0;
  std::int64_t stopped_at = 0;
  bool capped = false;
  double wall_time_seconds = 0.0;
  std::optional<std::uint64_t> seed;
};

struct RunOutput {
  RunRecord record;
  std::optional<Trajectory> trajectory;
};

struct SweepConfig {
  ExperimentConfig base;
  LoopWeightKind factor_form = LoopWeightKind::FactorPerDensity;
  double a_min = 1.0;
  double a_max = 12.0;
  double a_step = 0.5;
};

struct SweepPoint {
  double a = 0.0;
  double l = 0.0;
  std::int64_t T = 0;
  double Pr = 0.0;
  std::int64_t stopped_at = 0;
  bool capped = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t best = 0;  // argmax Pr, ties to the smaller a
  RunRecord best_record;
};

/// Resolves placement and weight, runs until the rule fires (or the cap),
/// and times the run. A capped run is flagged in the record, not thrown.
RunOutput run_experiment(const ExperimentConfig& config);

/// Inclusive lattice a_min, a_min + a_step, ... <= a_max. Throws
/// InvalidConfig for a_step <= 0 or a_min > a_max.
std::vector<double> sweep_lattice(double a_min, double a_max, double a_step);

SweepResult sweep_factor(const SweepConfig& sweep, int threads = 1);

/// One run per side length with the placement regenerated on each grid;
/// records come back in the order of `sides`.
std::vector<RunRecord> density_series(const ExperimentConfig& base, const std::vector<int>& sides, int threads = 1);

/// m distinct vertices drawn from a 64-bit Mersenne twister seeded with
/// `seed`; the same seed always gives the same list.
placement::Explicit random_placement(const GridSpec& grid, int m, std::uint64_t seed);

/// Runs job(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. The first exception thrown is rethrown.
template <class Result>
std::vector<Result> parallel_map(std::size_t count, int threads, const std::function<Result(std::size_t)>& job);

/// Worker count from --threads, else LQW_THREADS, else 1.
int resolve_thread_count(std::optional<int> flag);

std::string format_probability(double p);  // 6 decimals
std::string format_real(double x);          // round-trip precision
std::string format_factor(double a);        // shortest form, at least one decimal

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_series_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_record_jsonl(std::ostream& out, const RunRecord& record);

/// Writes through `writer` into `path`; throws Error(Io) if the file cannot
/// be opened or written.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer);

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const SweepConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
SweepConfig sweep_config_from_json(const nlohmann::json& j);

}  // namespace lqw

#include "lqw/detail/parallel_map.hpp"
