#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "lqw/evolution.hpp"
#include "lqw/placement.hpp"
#include "support/check_error.hpp"
#include "support/dense_oracle.hpp"

using namespace lqw;
using lqw::testing::max_abs_diff;

namespace {

std::vector<double> copy_of(const WalkState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

WalkState random_state(const GridSpec& g, double l, std::uint64_t seed) {
  WalkState s(g, l);
  testing::load(s, testing::random_unit_vector(testing::dimension(g), seed));
  return s;
}

MarkedSet random_marked(const GridSpec& g, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<VertexCoord> v;
  for (int i = 0; i < m; ++i) v.push_back(coord_of(all[static_cast<std::size_t>(i)], g));
  return MarkedSet(g, v);
}

}  // namespace

TEST_SUITE("evolution") {
  TEST_CASE("oracle flips the marked vertex only") {
    GridSpec g(2, 4);
    auto s = initial_state(g, 0.0);
    const auto before = copy_of(s);
    MarkedSet marked(g, {{0, 0}});
    apply_oracle(s, marked);
    for (int c = 0; c < g.coin_count(); ++c)
      for (std::int64_t v = 0; v < g.size(); ++v)
        CHECK(s.at(c, v) == (v == 0 ? -1.0 : 1.0) * before[testing::slot(g, c, v)]);
    CHECK(norm_sq(s) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("oracle leaves a state without marked support alone") {
    GridSpec g(2, 4);
    auto s = random_state(g, 0.2, 3);
    for (int c = 0; c < g.coin_count(); ++c) s.at(c, 5) = 0.0;
    const auto before = copy_of(s);
    apply_oracle(s, MarkedSet(g, {coord_of(5, g)}));
    CHECK(copy_of(s) == before);
  }

  TEST_CASE("coin examples") {
    GridSpec g(2, 3);
    WalkState s(g, 1.0);
    s.at(0, 4) = 1.0;
    apply_coin(s);
    CHECK(s.at(0, 4) == doctest::Approx(-0.6).epsilon(1e-15));
    for (int c = 1; c < 5; ++c) CHECK(s.at(c, 4) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(norm_sq(s) == doctest::Approx(1.0).epsilon(1e-14));

    WalkState t(g, 0.37);
    t.at(0, 2) = 1.0 / std::sqrt(2.0);
    t.at(1, 2) = -1.0 / std::sqrt(2.0);
    apply_coin(t);
    CHECK(t.at(0, 2) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(t.at(1, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(t.at(4, 2)) < 1e-16);

    auto u = initial_state(g, 0.37);
    const auto before = copy_of(u);
    apply_coin(u);
    CHECK(max_abs_diff(copy_of(u), before) < 1e-15);
  }

  TEST_CASE("shift moves along the axis and flips the coin") {
    GridSpec g(2, 5);
    WalkState s(g, 0.5);
    s.at(0, vertex_index({4, 2}, g)) = 0.6;
    s.at(3, vertex_index({1, 0}, g)) = 0.8;
    s.at(4, vertex_index({2, 2}, g)) = 0.1;
    apply_shift(s);
    CHECK(s.at(1, vertex_index({0, 2}, g)) == 0.6);
    CHECK(s.at(2, vertex_index({1, 4}, g)) == 0.8);
    CHECK(s.at(4, vertex_index({2, 2}, g)) == 0.1);
    CHECK(norm_sq(s) == doctest::Approx(0.6 * 0.6 + 0.8 * 0.8 + 0.01));
  }

  TEST_CASE("operators are involutions") {
    for (auto [d, L] : {std::pair{1, 4}, {2, 3}, {2, 4}, {3, 2}, {3, 5}}) {
      GridSpec g(d, L);
      auto marked = random_marked(g, 2, 11);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto s = random_state(g, 0.4, seed);
        const auto x = copy_of(s);
        apply_oracle(s, marked);
        apply_oracle(s, marked);
        CHECK(max_abs_diff(copy_of(s), x) < 1e-13);
        apply_coin(s);
        apply_coin(s);
        CHECK(max_abs_diff(copy_of(s), x) < 1e-13);
        apply_shift(s);
        apply_shift(s);
        CHECK(max_abs_diff(copy_of(s), x) < 1e-13);
      }
    }
  }

  TEST_CASE("norm drift per step") {
    for (auto [d, L] : {std::pair{1, 9}, {2, 6}, {3, 4}, {4, 3}}) {
      GridSpec g(d, L);
      auto s = random_state(g, 1.3, 5);
      step(s, random_marked(g, 3, 2));
      CHECK(std::abs(norm_sq(s) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("norm after many steps") {
    GridSpec g(2, 20);
    auto marked = generate_placement(placement::PSet{4}, g);
    auto s = initial_state(g, 4.0 * 4 / 400);
    evolve(s, marked, 1000);
    CHECK(std::abs(norm_sq(s) - 1.0) < 1e-10);
  }

  TEST_CASE("kernel matches the dense matrix") {
    for (auto [d, L, steps] : {std::tuple{1, 4, 25}, {2, 3, 25}, {2, 4, 25}, {3, 2, 25}, {2, 4, 50}}) {
      GridSpec g(d, L);
      for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const double l = 0.05 + 0.3 * static_cast<double>(seed);
        auto marked = random_marked(g, 1 + static_cast<int>(seed), seed * 7);
        std::vector<std::int64_t> idx(marked.indices().begin(), marked.indices().end());
        const auto U = testing::dense_step(g, l, idx);
        auto s = random_state(g, l, seed + 100);
        auto x = copy_of(s);
        Evolver ev(marked);
        for (int t = 0; t < steps; ++t) {
          ev.step(s);
          x = U.apply(x);
        }
        CHECK(max_abs_diff(copy_of(s), x) < 1e-10);
      }
    }
  }

  TEST_CASE("dense oracle on the 80-dimensional example") {
    GridSpec g(2, 4);
    const double l = 4.0 / 16;
    MarkedSet marked(g, {{0, 0}});
    const auto U = testing::dense_step(g, l, {0});
    auto s = initial_state(g, l);
    auto x = copy_of(s);
    for (int t = 0; t < 50; ++t) {
      step(s, marked);
      x = U.apply(x);
    }
    CHECK(max_abs_diff(copy_of(s), x) < 1e-10);
  }

  TEST_CASE("fused step is bit-identical to the separate operators") {
    for (auto [d, L] : {std::pair{1, 5}, {2, 7}, {3, 4}, {5, 3}}) {
      GridSpec g(d, L);
      auto marked = random_marked(g, 3, 9);
      auto a = random_state(g, 0.8, 21);
      auto b = a;
      Evolver ev(marked);
      for (int t = 0; t < 20; ++t) {
        ev.step(a);
        apply_oracle(b, marked);
        apply_coin(b);
        apply_shift(b);
      }
      CHECK(copy_of(a) == copy_of(b));
    }
  }

  TEST_CASE("unmarked walk is stationary") {
    GridSpec g(2, 8);
    auto s = initial_state(g, 0.25);
    Trajectory tr;
    evolve(s, MarkedSet::none(g), 100, &tr);
    REQUIRE(tr.rows.size() == 101);
    for (const auto& row : tr.rows) CHECK(std::abs(row.inner_signed - 1.0) <= 1e-12);
  }

  TEST_CASE("evolve records t = 0 and every step") {
    GridSpec g(2, 6);
    auto marked = generate_placement(placement::PSet{2}, g);
    auto s = initial_state(g, 0.1);
    const auto before = copy_of(s);
    Trajectory tr;
    evolve(s, marked, 0, &tr);
    REQUIRE(tr.rows.size() == 1);
    CHECK(tr.rows[0].step == 0);
    CHECK(tr.rows[0].success_prob == doctest::Approx(2.0 / 36).epsilon(1e-15));
    CHECK(copy_of(s) == before);
    evolve(s, marked, 5, &tr);
    CHECK(tr.rows.size() == 7);
    CHECK_THROWS_CODE(evolve(s, marked, -1), ErrorCode::OutOfRange);
  }

  TEST_CASE("grid mismatch") {
    auto s = initial_state(GridSpec(2, 4), 0.0);
    MarkedSet other(GridSpec(2, 5), {{1, 1}});
    CHECK_THROWS_CODE(step(s, other), ErrorCode::InvalidMarkedSet);
  }

  TEST_CASE("even steps increase on the premature-stop configurations") {
    for (auto [d, L, m] : {std::tuple{5, 10, 2}, {5, 15, 3}, {5, 15, 5}, {7, 6, 6}}) {
      GridSpec g(d, L);
      auto marked = generate_placement(placement::PDSet{m}, g);
      for (auto kind : {LoopWeightKind::NahimovsSmall, LoopWeightKind::GeneralizedDDim}) {
        auto s = initial_state(g, resolve_loop_weight(LoopWeightSpec::preset(kind), g, m));
        Trajectory tr;
        evolve(s, marked, 40, &tr);
        bool every_step_up = true;
        for (int t = 0; t + 2 <= 40; t += 2) CHECK(tr.rows[t + 2].success_prob > tr.rows[t].success_prob);
        for (int t = 0; t < 40; ++t) every_step_up = every_step_up && tr.rows[t + 1].success_prob > tr.rows[t].success_prob;
        CHECK_FALSE(every_step_up);
      }
    }
  }

  TEST_CASE("two-dimensional search reaches its peak at 409") {
    GridSpec g(2, 200);
    auto marked = generate_placement(placement::MSet{5}, g);
    auto s = initial_state(g, resolve_loop_weight(LoopWeightSpec::preset(LoopWeightKind::NahimovsLarge), g, 5));
    Trajectory tr;
    evolve(s, marked, 1000, &tr);
    auto peak = std::max_element(tr.rows.begin(), tr.rows.end(),
                                 [](const auto& a, const auto& b) { return a.success_prob < b.success_prob; });
    CHECK(peak->step == 409);
    CHECK(std::abs(tr.rows[409].success_prob - 0.878178) < 1e-4);
  }
}
