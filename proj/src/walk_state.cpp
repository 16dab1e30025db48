#include "lqw/walk_state.hpp"

#include <cmath>

#include "lqw/error.hpp"

namespace lqw {

namespace {

void check_weight(double loop_weight) {
  if (!(loop_weight >= 0.0) || !std::isfinite(loop_weight)) {
    throw Error(ErrorCode::InvalidWeight,
                "self-loop weight must be a finite value >= 0, got " + std::to_string(loop_weight));
  }
}

}  // namespace

CoinBasisWeights CoinBasisWeights::for_grid(const GridSpec& grid, double loop_weight) {
  check_weight(loop_weight);
  const double total = 2.0 * grid.dims() + loop_weight;
  return {1.0 / std::sqrt(total), std::sqrt(loop_weight) / std::sqrt(total)};
}

WalkState::WalkState(const GridSpec& grid, double loop_weight)
    : grid_(grid), loop_weight_(loop_weight) {
  check_weight(loop_weight);
  amps_.assign(static_cast<std::size_t>(grid.coin_count()) * static_cast<std::size_t>(grid.size()), 0.0);
}

std::span<double> WalkState::plane(int coin) {
  if (coin < 0 || coin >= grid_.coin_count()) {
    throw Error(ErrorCode::OutOfRange, "coin plane " + std::to_string(coin) + " outside [0, 2d]");
  }
  return std::span<double>(amps_).subspan(offset(coin, 0), static_cast<std::size_t>(grid_.size()));
}

std::span<const double> WalkState::plane(int coin) const {
  if (coin < 0 || coin >= grid_.coin_count()) {
    throw Error(ErrorCode::OutOfRange, "coin plane " + std::to_string(coin) + " outside [0, 2d]");
  }
  return std::span<const double>(amps_).subspan(offset(coin, 0), static_cast<std::size_t>(grid_.size()));
}

void WalkState::swap_storage(std::vector<double>& buffer) {
  if (buffer.size() != amps_.size()) {
    throw Error(ErrorCode::OutOfRange, "swap buffer length does not match the state");
  }
  amps_.swap(buffer);
}

WalkState initial_state(const GridSpec& grid, double loop_weight) {
  WalkState state(grid, loop_weight);
  const auto w = CoinBasisWeights::for_grid(grid, loop_weight);
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.size()));
  const double dir = w.directional * scale;
  const double loop = w.loop * scale;
  for (int c = 0; c < grid.coin_count(); ++c) {
    auto p = state.plane(c);
    std::fill(p.begin(), p.end(), c == grid.loop_index() ? loop : dir);
  }
  return state;
}

double norm_sq(const WalkState& state) {
  double sum = 0.0;
  for (double a : state.amplitudes()) sum += a * a;
  return sum;
}

double success_probability(const WalkState& state, const MarkedSet& marked) {
  if (!(marked.grid() == state.grid())) {
    throw Error(ErrorCode::InvalidMarkedSet, "marked set was built for a different grid");
  }
  double p = 0.0;
  for (std::int64_t v : marked.indices()) {
    for (int c = 0; c < state.grid().coin_count(); ++c) {
      const double a = state.at(c, v);
      p += a * a;
    }
  }
  return p;
}

double inner_product_with_initial(const WalkState& state) {
  const auto& grid = state.grid();
  double directional = 0.0;
  for (int c = 0; c < grid.loop_index(); ++c) {
    for (double a : state.plane(c)) directional += a;
  }
  double loop = 0.0;
  for (double a : state.plane(grid.loop_index())) loop += a;
  const double l = state.loop_weight();
  const double norm = std::sqrt(static_cast<double>(grid.size()) * (2.0 * grid.dims() + l));
  return (directional + std::sqrt(l) * loop) / norm;
}

}  // namespace lqw
