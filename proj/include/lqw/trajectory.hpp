#pragma once

#include <cstdint>
#include <vector>

namespace lqw {

struct TrajectoryRow {
  std::int64_t step;
  double success_prob;
  double inner_signed;
};

/// Per-step observables, one row per step starting at t = 0.
struct Trajectory {
  std::vector<TrajectoryRow> rows;

  void append(std::int64_t step, double p, double ip) { rows.push_back({step, p, ip}); }
  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
};

}  // namespace lqw
