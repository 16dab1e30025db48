// Acceptance report: one PASS/FAIL line per criterion.
//
//   lqw_acceptance [--strict] [--only <name>] [--threads <n>]
//
// Exit status is 0 once every criterion has been evaluated, whatever the
// verdicts; --strict makes any FAIL exit 1. Errors exit 2.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "lqw/evolution.hpp"
#include "lqw/experiment.hpp"
#include "lqw/placement.hpp"
#include "lqw/reproduce.hpp"
#include "lqw/stopping.hpp"
#include "support/dense_oracle.hpp"

using namespace lqw;

namespace {

int g_threads = 1;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

RunResult run(int d, int L, PlacementSpec placement, LoopWeightSpec weight, StopRule rule) {
  GridSpec g(d, L);
  auto marked = generate_placement(placement, g);
  const double l = resolve_loop_weight(weight, g, static_cast<int>(marked.size()));
  return run_until_stop(g, marked, l, rule, default_cap(g), false);
}

std::string tp(std::int64_t T, double Pr) { return std::to_string(T) + "/" + format_probability(Pr); }

void report_rows(Verdict& v, const ReproReport& r) {
  for (const auto& row : r.rows) {
    if (row.skipped) continue;
    if (!row.pass()) {
      v.require(false, row.label + " got " + tp(row.T, row.Pr) + " want " +
                           (row.published_T ? std::to_string(*row.published_T) : std::string("-")) + "/" +
                           format_probability(row.published_Pr));
    }
  }
  v.detail << " " << r.passed() - r.skipped() << "/" << r.rows.size() - r.skipped() << " rows";
}

// Table 1: M_m on 200x200, l = 4(m - sqrt m)/N, first-decline and inner-abs.
void table1(Verdict& v) {
  const int ms[] = {1, 5, 10, 15, 20};
  const std::int64_t fd_T[] = {399, 409, 297, 290, 288};
  const double fd_Pr[] = {0.140828, 0.878178, 0.867440, 0.835395, 0.818635};
  const std::int64_t ia_T[] = {420, 288, 249, 254, 268};
  const auto w = LoopWeightSpec::preset(LoopWeightKind::NahimovsLarge);
  for (int i = 0; i < 5; ++i) {
    auto fd = run(2, 200, placement::MSet{ms[i]}, w, StopRule::FirstDecline);
    v.require(fd.T == fd_T[i] && std::abs(fd.Pr - fd_Pr[i]) <= 1e-4,
              "m=" + std::to_string(ms[i]) + " first-decline " + tp(fd.T, fd.Pr));
    auto ia = run(2, 200, placement::MSet{ms[i]}, w, StopRule::InnerAbsFirstMin);
    v.require(ia.T == ia_T[i], "m=" + std::to_string(ms[i]) + " inner-abs T=" + std::to_string(ia.T));
  }
}

// Signed inner-product minimum and the probability peak land on the same T.
void inner_signed(Verdict& v, int m) {
  const auto w = LoopWeightSpec::preset(LoopWeightKind::NahimovsLarge);
  auto fd = run(2, 200, placement::MSet{m}, w, StopRule::FirstDecline);
  auto is = run(2, 200, placement::MSet{m}, w, StopRule::InnerSignedFirstMin);
  v.detail << " m=" << m << " first-decline T=" << fd.T << " inner-signed T=" << is.T;
  v.require(fd.T == is.T, "step mismatch");
  if (m == 5) v.require(fd.T == 409, "first-decline T != 409");
}

// Table 4: P_{d,L,m}, l = 4m/N, two-step lookback.
void table4(Verdict& v) {
  const std::tuple<int, int, int, std::int64_t, double> rows[] = {
      {3, 32, 8, 134, 0.958805}, {4, 16, 4, 257, 0.888795}, {5, 10, 5, 285, 0.816259}, {6, 8, 4, 441, 0.739591}};
  int ok = 0;
  for (const auto& [d, L, m, T, Pr] : rows) {
    auto r = run(d, L, placement::PDSet{m}, LoopWeightSpec::preset(LoopWeightKind::NahimovsSmall),
                 StopRule::TwoStepLookback);
    const bool pass = r.T == T && std::abs(r.Pr - Pr) <= 1e-4;
    ok += pass;
    v.require(pass, "d=" + std::to_string(d) + " got " + tp(r.T, r.Pr) + " want " + tp(T, Pr));
  }
  v.detail << " " << ok << "/4 rows";
}

void table5(Verdict& v) {
  ReproOptions o;
  o.tolerance = 1e-4;
  o.threads = g_threads;
  report_rows(v, reproduce(5, o));
}

void table6(Verdict& v) {
  ReproOptions o;
  o.tolerance = 1e-5;
  o.threads = g_threads;
  report_rows(v, reproduce(6, o));
}

// Per-density sweep a in [1, 12] step 0.5 on the Table 4 configurations.
void factor_sweep(Verdict& v) {
  const std::tuple<int, int, int, double, double> cases[] = {
      {3, 32, 8, 6.0, -1}, {4, 16, 4, 8.0, -1}, {5, 10, 5, 10.0, 0.999933}, {6, 8, 4, 12.0, 0.999986}};
  for (const auto& [d, L, m, a_best, pr_best] : cases) {
    SweepConfig s;
    s.base.grid = GridSpec(d, L);
    s.base.placement = placement::PDSet{m};
    s.base.rule = StopRule::TwoStepLookback;
    s.factor_form = LoopWeightKind::FactorPerDensity;
    s.a_min = 1.0;
    s.a_max = 12.0;
    s.a_step = 0.5;
    auto res = sweep_factor(s, g_threads);
    const auto& best = res.points[res.best];
    v.detail << " " << d << "D a=" << format_factor(best.a);
    v.require(best.a == a_best, std::to_string(d) + "D best a " + format_factor(best.a));
    if (pr_best > 0) {
      v.require(std::abs(best.Pr - pr_best) <= 1e-3, std::to_string(d) + "D Pr " + format_probability(best.Pr));
    }
  }
}

// P_{L,10} with the best l = (4/N) a, a in [1, 10] step 0.25, first-decline.
SweepPoint best_per_n(int L, int m, double a_max) {
  SweepConfig s;
  s.base.grid = GridSpec(2, L);
  s.base.placement = placement::PSet{m};
  s.base.rule = StopRule::FirstDecline;
  s.factor_form = LoopWeightKind::FactorPerN;
  s.a_min = 1.0;
  s.a_max = a_max;
  s.a_step = 0.25;
  auto res = sweep_factor(s, g_threads);
  return res.points[res.best];
}

void table2(Verdict& v) {
  const std::tuple<int, std::int64_t, double> rows[] = {{100, 109, 0.902339}, {200, 223, 0.927680}};
  for (const auto& [L, T, Pr] : rows) {
    auto p = best_per_n(L, 10, 10.0);
    v.detail << " L=" << L << " " << tp(p.T, p.Pr);
    v.require(p.T == T && std::abs(p.Pr - Pr) <= 1e-3, "L=" + std::to_string(L));
  }
}

void table3(Verdict& v) {
  auto small = best_per_n(100, 3, 3.0);
  auto large = best_per_n(1000, 3, 3.0);
  v.detail << " Pr(100)=" << format_probability(small.Pr) << " Pr(1000)=" << format_probability(large.Pr);
  v.require(small.Pr > large.Pr, "no drop from L=100 to L=1000");
}

MarkedSet random_marked(const GridSpec& g, int m, std::uint64_t seed) {
  auto e = random_placement(g, m, seed);
  return MarkedSet(g, e.vertices);
}

std::vector<double> amps(const WalkState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

void properties(Verdict& v) {
  const std::pair<int, int> grids[] = {{1, 4}, {2, 3}, {2, 4}, {3, 2}};
  double inv = 0.0, drift = 0.0, dense = 0.0;
  std::uint64_t seed = 1;
  for (auto [d, L] : grids) {
    GridSpec g(d, L);
    for (int rep = 0; rep < 3; ++rep, ++seed) {
      const double l = 0.1 * static_cast<double>(seed);
      auto marked = random_marked(g, 1 + rep, seed);
      WalkState s(g, l);
      testing::load(s, testing::random_unit_vector(testing::dimension(g), seed));
      const auto x = amps(s);
      apply_oracle(s, marked);
      apply_oracle(s, marked);
      inv = std::max(inv, testing::max_abs_diff(amps(s), x));
      apply_coin(s);
      apply_coin(s);
      inv = std::max(inv, testing::max_abs_diff(amps(s), x));
      apply_shift(s);
      apply_shift(s);
      inv = std::max(inv, testing::max_abs_diff(amps(s), x));

      step(s, marked);
      drift = std::max(drift, std::abs(norm_sq(s) - 1.0));

      std::vector<std::int64_t> idx(marked.indices().begin(), marked.indices().end());
      const auto U = testing::dense_step(g, l, idx);
      testing::load(s, x);
      auto y = x;
      Evolver ev(marked);
      for (int t = 0; t < 25; ++t) {
        ev.step(s);
        y = U.apply(y);
      }
      dense = std::max(dense, testing::max_abs_diff(amps(s), y));
    }
  }
  v.require(inv < 1e-13, "involution error");
  v.require(drift < 1e-12, "norm drift");
  v.require(dense < 1e-10, "dense mismatch");

  double init = 0.0;
  for (auto [d, L, m] : {std::tuple{2, 200, 5}, {3, 32, 8}, {5, 10, 2}, {2, 37, 7}}) {
    GridSpec g(d, L);
    auto s = initial_state(g, 4.0 * m / static_cast<double>(g.size()));
    const double expect = static_cast<double>(m) / static_cast<double>(g.size());
    init = std::max(init, std::abs(success_probability(s, generate_placement(placement::PDSet{m}, g)) - expect) / expect);
  }
  v.require(init <= 1e-15, "initial m/N");

  double stationary = 0.0;
  {
    GridSpec g(2, 16);
    auto s = initial_state(g, 0.3);
    Trajectory tr;
    evolve(s, MarkedSet::none(g), 100, &tr);
    for (const auto& row : tr.rows) stationary = std::max(stationary, std::abs(row.inner_signed - 1.0));
  }
  v.require(stationary <= 1e-12, "unmarked walk not stationary");

  char buf[200];
  std::snprintf(buf, sizeof buf, " inv=%.1e drift=%.1e dense=%.1e init=%.1e stat=%.1e", inv, drift, dense, init,
                stationary);
  v.detail << buf;
}

struct Criterion {
  const char* name;
  const char* tolerance;
  std::function<void(Verdict&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  std::string only;
  std::optional<int> threads;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--strict")) {
      strict = true;
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = argv[++i];
    } else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) {
      threads = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: lqw_acceptance [--strict] [--only <name>] [--threads <n>]\n";
      return 2;
    }
  }
  g_threads = resolve_thread_count(threads);
  if (!threads && !std::getenv("LQW_THREADS")) g_threads = std::max(1u, std::thread::hardware_concurrency());

  const std::vector<Criterion> criteria = {
      {"table1", "T exact, Pr 1e-4", table1},
      {"inner-signed-m5", "T exact", [](Verdict& v) { inner_signed(v, 5); }},
      {"inner-signed-m10", "T exact", [](Verdict& v) { inner_signed(v, 10); }},
      {"table4-two-step", "T exact, Pr 1e-4", table4},
      {"table5-two-step", "T exact, Pr 1e-4", table5},
      {"table6-first-decline", "T exact, Pr 1e-5", table6},
      {"factor-sweep", "a exact, Pr 1e-3", factor_sweep},
      {"table2-pset", "T exact, Pr 1e-3", table2},
      {"table3-non-monotone", "Pr(100) > Pr(1000)", table3},
      {"properties", "1e-13 / 1e-12 / 1e-10 / 1e-15", properties},
  };

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Verdict v;
    try {
      c.body(v);
    } catch (const std::exception& e) {
      std::cout << "ERROR " << c.name << ": " << e.what() << std::endl;
      return 2;
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << " (" << c.tolerance << ")" << v.detail.str()
              << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion named '" << only << "'\n";
    return 2;
  }
  std::cout << ran - failed << "/" << ran << " criteria pass" << std::endl;
  return strict && failed ? 1 : 0;
}
