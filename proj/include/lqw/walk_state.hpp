/*
 * walk_state.hpp - the walker's state as a real amplitude tensor.
 *
 * Storage is coin-major: (2d+1) planes of N contiguous doubles, plane c
 * holding the amplitude of coin direction c at every vertex. All operators
 * of the walk are real, so a real tensor is enough.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lqw/grid.hpp"
#include "lqw/marked_set.hpp"

namespace lqw {

/// Components of the weighted coin state s_c: every directional entry is
/// 1/sqrt(2d+l), the self-loop entry sqrt(l)/sqrt(2d+l).
struct CoinBasisWeights {
  double directional;
  double loop;

  static CoinBasisWeights for_grid(const GridSpec& grid, double loop_weight);
};

class WalkState {
 public:
  /// All-zero tensor. Throws InvalidWeight for negative or non-finite l.
  WalkState(const GridSpec& grid, double loop_weight);

  const GridSpec& grid() const noexcept { return grid_; }
  double loop_weight() const noexcept { return loop_weight_; }

  std::span<double> plane(int coin);
  std::span<const double> plane(int coin) const;
  std::span<double> amplitudes() noexcept { return amps_; }
  std::span<const double> amplitudes() const noexcept { return amps_; }

  double& at(int coin, std::int64_t vertex) { return amps_[offset(coin, vertex)]; }
  double at(int coin, std::int64_t vertex) const { return amps_[offset(coin, vertex)]; }

  /// Exchanges the amplitude storage with `buffer`, which must have the
  /// same length. Used by the double-buffered shift.
  void swap_storage(std::vector<double>& buffer);

 private:
  std::size_t offset(int coin, std::int64_t vertex) const noexcept {
    return static_cast<std::size_t>(coin) * static_cast<std::size_t>(grid_.size()) +
           static_cast<std::size_t>(vertex);
  }

  GridSpec grid_;
  double loop_weight_;
  std::vector<double> amps_;
};

/// Uniform over vertices, each vertex in the weighted coin state.
WalkState initial_state(const GridSpec& grid, double loop_weight);

double norm_sq(const WalkState& state);

/// Probability mass on the marked vertices, summed over all coin directions.
double success_probability(const WalkState& state, const MarkedSet& marked);

/// Signed overlap <psi(t)|psi(0)>, using that psi(0) is constant within the
/// directional and the loop component classes.
double inner_product_with_initial(const WalkState& state);

}  // namespace lqw
