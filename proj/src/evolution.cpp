#include "lqw/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "lqw/error.hpp"

namespace lqw {

namespace {

// Writes value(k) for every source position k of a plane into the position
// k + offset, taken cyclically within consecutive blocks of `block` entries.
// Along axis i with stride s = L^i, block = s * L and offset s (or
// block - s) moves every vertex one site forward (or backward) on axis i.
template <class Value>
void scatter_rotated(double* dst, std::int64_t n, std::int64_t block, std::int64_t offset, Value value) {
  const std::int64_t head = block - offset;
  for (std::int64_t b = 0; b < n; b += block) {
    double* out = dst + b;
    for (std::int64_t k = 0; k < head; ++k) out[k + offset] = value(b + k);
    for (std::int64_t k = head; k < block; ++k) out[k - head] = value(b + k);
  }
}

}  // namespace

Evolver::Evolver(MarkedSet marked) : marked_(std::move(marked)) {
  const auto& grid = marked_.grid();
  twice_lambda_.resize(static_cast<std::size_t>(grid.size()));
  back_.resize(static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(grid.coin_count()));
}

void Evolver::check_grid(const WalkState& state) const {
  if (!(state.grid() == marked_.grid())) {
    throw Error(ErrorCode::InvalidMarkedSet, "marked set and walk state are on different grids");
  }
}

void Evolver::apply_oracle(WalkState& state) const { lqw::apply_oracle(state, marked_); }

void Evolver::compute_twice_lambda(const WalkState& state) {
  const auto& grid = state.grid();
  const auto n = static_cast<std::size_t>(grid.size());
  const double l = state.loop_weight();
  const double sqrt_l = std::sqrt(l);
  const double total = 2.0 * grid.dims() + l;
  double* lam = twice_lambda_.data();

  const double* first = state.plane(0).data();
  std::copy(first, first + n, lam);
  for (int c = 1; c < grid.loop_index(); ++c) {
    const double* p = state.plane(c).data();
    for (std::size_t v = 0; v < n; ++v) lam[v] += p[v];
  }
  const double* loop = state.plane(grid.loop_index()).data();
  for (std::size_t v = 0; v < n; ++v) lam[v] = 2.0 * ((lam[v] + sqrt_l * loop[v]) / total);
}

void Evolver::apply_coin(WalkState& state) {
  check_grid(state);
  compute_twice_lambda(state);
  const auto& grid = state.grid();
  const auto n = static_cast<std::size_t>(grid.size());
  const double sqrt_l = std::sqrt(state.loop_weight());
  const double* lam = twice_lambda_.data();
  for (int c = 0; c < grid.loop_index(); ++c) {
    double* p = state.plane(c).data();
    for (std::size_t v = 0; v < n; ++v) p[v] = lam[v] - p[v];
  }
  double* loop = state.plane(grid.loop_index()).data();
  for (std::size_t v = 0; v < n; ++v) loop[v] = lam[v] * sqrt_l - loop[v];
}

void Evolver::apply_shift(WalkState& state) {
  check_grid(state);
  const auto& grid = state.grid();
  const std::int64_t n = grid.size();
  const auto plane_len = static_cast<std::size_t>(n);
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const std::int64_t s = grid.stride(axis);
    const std::int64_t block = s * grid.side();
    const double* plus = state.plane(2 * axis).data();
    const double* minus = state.plane(2 * axis + 1).data();
    double* to_minus = back_.data() + static_cast<std::size_t>(2 * axis + 1) * plane_len;
    double* to_plus = back_.data() + static_cast<std::size_t>(2 * axis) * plane_len;
    scatter_rotated(to_minus, n, block, s, [plus](std::int64_t k) { return plus[k]; });
    scatter_rotated(to_plus, n, block, block - s, [minus](std::int64_t k) { return minus[k]; });
  }
  auto loop = state.plane(grid.loop_index());
  std::copy(loop.begin(), loop.end(), back_.begin() + static_cast<std::ptrdiff_t>(grid.loop_index() * plane_len));
  state.swap_storage(back_);
}

void Evolver::step(WalkState& state) {
  apply_oracle(state);
  compute_twice_lambda(state);

  const auto& grid = state.grid();
  const std::int64_t n = grid.size();
  const auto plane_len = static_cast<std::size_t>(n);
  const double sqrt_l = std::sqrt(state.loop_weight());
  const double* lam = twice_lambda_.data();
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const std::int64_t s = grid.stride(axis);
    const std::int64_t block = s * grid.side();
    const double* plus = state.plane(2 * axis).data();
    const double* minus = state.plane(2 * axis + 1).data();
    double* to_minus = back_.data() + static_cast<std::size_t>(2 * axis + 1) * plane_len;
    double* to_plus = back_.data() + static_cast<std::size_t>(2 * axis) * plane_len;
    scatter_rotated(to_minus, n, block, s, [plus, lam](std::int64_t k) { return lam[k] - plus[k]; });
    scatter_rotated(to_plus, n, block, block - s, [minus, lam](std::int64_t k) { return lam[k] - minus[k]; });
  }
  const double* loop = state.plane(grid.loop_index()).data();
  double* to_loop = back_.data() + static_cast<std::size_t>(grid.loop_index()) * plane_len;
  for (std::size_t v = 0; v < plane_len; ++v) to_loop[v] = lam[v] * sqrt_l - loop[v];
  state.swap_storage(back_);
}

void Evolver::evolve(WalkState& state, std::int64_t steps, Trajectory* recorder) {
  if (steps < 0) {
    throw Error(ErrorCode::OutOfRange, "step count must be >= 0, got " + std::to_string(steps));
  }
  check_grid(state);
  if (recorder) recorder->append(0, success_probability(state, marked_), inner_product_with_initial(state));
  for (std::int64_t t = 1; t <= steps; ++t) {
    step(state);
    if (recorder) recorder->append(t, success_probability(state, marked_), inner_product_with_initial(state));
  }
}

void apply_oracle(WalkState& state, const MarkedSet& marked) {
  if (!(state.grid() == marked.grid())) {
    throw Error(ErrorCode::InvalidMarkedSet, "marked set and walk state are on different grids");
  }
  for (int c = 0; c < state.grid().coin_count(); ++c) {
    auto p = state.plane(c);
    for (std::int64_t v : marked.indices()) p[static_cast<std::size_t>(v)] = -p[static_cast<std::size_t>(v)];
  }
}

void apply_coin(WalkState& state) { Evolver(MarkedSet::none(state.grid())).apply_coin(state); }

void apply_shift(WalkState& state) { Evolver(MarkedSet::none(state.grid())).apply_shift(state); }

void step(WalkState& state, const MarkedSet& marked) { Evolver(marked).step(state); }

void evolve(WalkState& state, const MarkedSet& marked, std::int64_t steps, Trajectory* recorder) {
  Evolver(marked).evolve(state, steps, recorder);
}

}  // namespace lqw
