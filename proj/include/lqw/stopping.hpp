/*
 * stopping.hpp - stopping conditions for a search run.
 *
 * Rules only look at the stream of (t, P(t), <psi(t)|psi(0)>) rows, never
 * at amplitudes:
 *
 *   FirstDecline         stop at the first t >= 1 with P(t) < P(t-1);
 *                        report T = t-1
 *   TwoStepLookback      stop at the first t >= 2 with P(t) < P(t-2);
 *                        report the best P seen so far
 *   InnerAbsFirstMin     stop at the first t >= 1 with |ip(t)| > |ip(t-1)|;
 *                        report T = t-1
 *   InnerSignedFirstMin  same on the signed value ip(t) > ip(t-1)
 *
 * Two values within kTieTolerance (relative) of each other compare equal,
 * and equality never fires a rule. Successive probabilities that are equal
 * in exact arithmetic differ by a few ulps after the coin, and those must
 * not end a run.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lqw/grid.hpp"
#include "lqw/marked_set.hpp"
#include "lqw/trajectory.hpp"

namespace lqw {

enum class StopRule { FirstDecline, TwoStepLookback, InnerAbsFirstMin, InnerSignedFirstMin };

inline constexpr double kTieTolerance = 1e-12;

/// CLI names: first-decline, two-step, inner-abs, inner-signed.
std::string_view to_string(StopRule rule) noexcept;
std::optional<StopRule> parse_stop_rule(std::string_view name) noexcept;
bool uses_inner_product(StopRule rule) noexcept;

struct RunResult {
  std::int64_t T = 0;
  double Pr = 0.0;
  std::int64_t stopped_at = 0;
  bool capped = false;
  std::optional<Trajectory> trajectory;
};

/// Incremental evaluation of one rule over a stream of trajectory rows.
class StopMonitor {
 public:
  explicit StopMonitor(StopRule rule) : rule_(rule) {}

  /// Feeds the next row (steps must be 0, 1, 2, ...). Returns true once the
  /// rule has fired; further rows are rejected after that.
  bool observe(const TrajectoryRow& row);

  bool fired() const noexcept { return fired_; }
  StopRule rule() const noexcept { return rule_; }

  /// Result after firing, or the best-so-far (capped) result otherwise.
  RunResult result() const;

 private:
  StopRule rule_;
  bool fired_ = false;
  std::int64_t next_step_ = 0;
  TrajectoryRow history_[3] = {};  // rows t, t-1, t-2
  std::int64_t best_step_ = 0;
  double best_p_ = -1.0;
  std::int64_t report_step_ = 0;
  double report_p_ = 0.0;
  std::int64_t stopped_at_ = 0;
};

/// 20 * ceil(sqrt(N * (1 + ln N))).
std::int64_t default_cap(const GridSpec& grid);

/// Evolves from the initial state until `rule` fires or `cap` steps have
/// been taken. Throws InvalidCap for cap < 3 and InvalidMarkedSet for an
/// empty marked set.
RunResult run_until_stop(const GridSpec& grid, const MarkedSet& marked, double loop_weight, StopRule rule,
                         std::int64_t cap, bool record);

}  // namespace lqw
