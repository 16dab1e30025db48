/*
 * evolution.hpp - one step of the lackadaisical walk, U = S_ff * C * O.
 *
 *   O      negates every amplitude at a marked vertex
 *   C      weighted Grover coin 2|s_c><s_c| - I, applied at each vertex
 *   S_ff   flip-flop shift: moves (axis i, +) one vertex forward along i
 *          landing on (axis i, -), and vice versa; the loop stays put
 *
 * The coin never builds a matrix. For each vertex it computes
 *   lambda = (sum of directional amplitudes + sqrt(l) * loop) / (2d + l)
 * and maps directional a -> 2*lambda - a, loop a -> 2*lambda*sqrt(l) - a.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "lqw/marked_set.hpp"
#include "lqw/trajectory.hpp"
#include "lqw/walk_state.hpp"

namespace lqw {

/// Owns the scratch buffers for repeated steps on states of one grid.
/// A single Evolver must not be shared between threads.
class Evolver {
 public:
  explicit Evolver(MarkedSet marked);

  const MarkedSet& marked() const noexcept { return marked_; }

  void apply_oracle(WalkState& state) const;
  void apply_coin(WalkState& state);
  void apply_shift(WalkState& state);

  /// Oracle, coin and shift. Coin and shift are fused into one pass that
  /// writes the reflected amplitudes straight to their shifted slots; the
  /// result is bit-identical to calling the three operators in turn.
  void step(WalkState& state);

  /// Applies `steps` steps. With a recorder, appends (t, P, <psi|psi0>)
  /// for t = 0 before the first step and after every step.
  void evolve(WalkState& state, std::int64_t steps, Trajectory* recorder = nullptr);

 private:
  void check_grid(const WalkState& state) const;
  void compute_twice_lambda(const WalkState& state);

  MarkedSet marked_;
  std::vector<double> twice_lambda_;
  std::vector<double> back_;
};

void apply_oracle(WalkState& state, const MarkedSet& marked);
void apply_coin(WalkState& state);
void apply_shift(WalkState& state);
void step(WalkState& state, const MarkedSet& marked);
void evolve(WalkState& state, const MarkedSet& marked, std::int64_t steps, Trajectory* recorder = nullptr);

}  // namespace lqw
