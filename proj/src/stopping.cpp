#include "lqw/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "lqw/error.hpp"
#include "lqw/evolution.hpp"
#include "lqw/walk_state.hpp"

namespace lqw {

namespace {

bool below(double a, double b) { return a < b - kTieTolerance * std::max(std::abs(a), std::abs(b)); }
bool above(double a, double b) { return a > b + kTieTolerance * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string_view to_string(StopRule rule) noexcept {
  switch (rule) {
    case StopRule::FirstDecline: return "first-decline";
    case StopRule::TwoStepLookback: return "two-step";
    case StopRule::InnerAbsFirstMin: return "inner-abs";
    case StopRule::InnerSignedFirstMin: return "inner-signed";
  }
  return "unknown";
}

std::optional<StopRule> parse_stop_rule(std::string_view name) noexcept {
  for (auto rule : {StopRule::FirstDecline, StopRule::TwoStepLookback, StopRule::InnerAbsFirstMin,
                    StopRule::InnerSignedFirstMin}) {
    if (name == to_string(rule)) return rule;
  }
  return std::nullopt;
}

bool uses_inner_product(StopRule rule) noexcept {
  return rule == StopRule::InnerAbsFirstMin || rule == StopRule::InnerSignedFirstMin;
}

bool StopMonitor::observe(const TrajectoryRow& row) {
  if (fired_) throw Error(ErrorCode::OutOfRange, "stopping rule already fired");
  if (row.step != next_step_) {
    throw Error(ErrorCode::OutOfRange,
                "expected step " + std::to_string(next_step_) + ", got " + std::to_string(row.step));
  }
  if (!std::isfinite(row.success_prob) || (uses_inner_product(rule_) && !std::isfinite(row.inner_signed))) {
    throw Error(ErrorCode::NumericFailure, "non-finite observable at step " + std::to_string(row.step));
  }
  ++next_step_;
  history_[2] = history_[1];
  history_[1] = history_[0];
  history_[0] = row;
  if (row.success_prob > best_p_) {
    best_p_ = row.success_prob;
    best_step_ = row.step;
  }

  const std::int64_t t = row.step;
  const auto& prev = history_[1];
  switch (rule_) {
    case StopRule::FirstDecline:
      fired_ = t >= 1 && below(row.success_prob, prev.success_prob);
      if (fired_) report_step_ = prev.step, report_p_ = prev.success_prob;
      break;
    case StopRule::TwoStepLookback:
      fired_ = t >= 2 && below(row.success_prob, history_[2].success_prob);
      if (fired_) report_step_ = best_step_, report_p_ = best_p_;
      break;
    case StopRule::InnerAbsFirstMin:
      fired_ = t >= 1 && above(std::abs(row.inner_signed), std::abs(prev.inner_signed));
      if (fired_) report_step_ = prev.step, report_p_ = prev.success_prob;
      break;
    case StopRule::InnerSignedFirstMin:
      fired_ = t >= 1 && above(row.inner_signed, prev.inner_signed);
      if (fired_) report_step_ = prev.step, report_p_ = prev.success_prob;
      break;
  }
  if (fired_) stopped_at_ = t;
  return fired_;
}

RunResult StopMonitor::result() const {
  RunResult r;
  if (fired_) {
    r.T = report_step_;
    r.Pr = report_p_;
    r.stopped_at = stopped_at_;
  } else if (next_step_ > 0) {
    r.T = best_step_;
    r.Pr = best_p_;
    r.stopped_at = next_step_ - 1;
    r.capped = true;
  }
  return r;
}

std::int64_t default_cap(const GridSpec& grid) {
  const double n = static_cast<double>(grid.size());
  return 20 * static_cast<std::int64_t>(std::ceil(std::sqrt(n * (1.0 + std::log(n)))));
}

RunResult run_until_stop(const GridSpec& grid, const MarkedSet& marked, double loop_weight, StopRule rule,
                         std::int64_t cap, bool record) {
  if (cap < 3) throw Error(ErrorCode::InvalidCap, "step cap must be >= 3, got " + std::to_string(cap));
  if (marked.empty()) throw Error(ErrorCode::InvalidMarkedSet, "marked set must be nonempty");
  if (!(marked.grid() == grid)) {
    throw Error(ErrorCode::InvalidMarkedSet, "marked set was built for a different grid");
  }

  WalkState state = initial_state(grid, loop_weight);
  Evolver evolver(marked);
  StopMonitor monitor(rule);
  Trajectory trajectory;
  const bool need_ip = record || uses_inner_product(rule);

  auto observe = [&](std::int64_t t) {
    const TrajectoryRow row{t, success_probability(state, marked),
                            need_ip ? inner_product_with_initial(state) : 0.0};
    if (record) trajectory.rows.push_back(row);
    return monitor.observe(row);
  };

  observe(0);
  for (std::int64_t t = 1; t <= cap; ++t) {
    evolver.step(state);
    if (observe(t)) break;
  }

  RunResult result = monitor.result();
  if (record) result.trajectory = std::move(trajectory);
  return result;
}

}  // namespace lqw
