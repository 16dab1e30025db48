/*
 * placement.hpp - marked-vertex arrangements and self-loop weight presets.
 *
 * Arrangements (stride k = floor(L/m)):
 *   MSet(m)     {(0, 10i)}, 2-d only
 *   PSet(m)     {(k i, k i)}, 2-d only
 *   PDSet(m)    {(k i, ..., k i)}, equally spaced on the main diagonal
 *   Block(m)    sqrt(m) x sqrt(m) square with its low corner at `origin`
 *   Explicit    caller-supplied list
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lqw/grid.hpp"
#include "lqw/marked_set.hpp"

namespace lqw {

namespace placement {
struct MSet { int m; };
struct PSet { int m; };
struct PDSet { int m; };
struct Block { int m; VertexCoord origin; };
struct Explicit { std::vector<VertexCoord> vertices; };
}  // namespace placement

using PlacementSpec =
    std::variant<placement::MSet, placement::PSet, placement::PDSet, placement::Block, placement::Explicit>;

/// mset, pset, pdset, block or explicit.
std::string_view placement_name(const PlacementSpec& spec) noexcept;
int placement_count(const PlacementSpec& spec) noexcept;

MarkedSet generate_placement(const PlacementSpec& spec, const GridSpec& grid);

enum class LoopWeightKind {
  Wong,              // 4/N
  NahimovsSmall,     // 4m/N
  NahimovsLarge,     // 4(m - sqrt(m))/N
  SahaBlock,         // 4/(N (m + floor(sqrt(m)/2)))
  GeneralizedDDim,   // 2dm/N
  FactorPerN,        // (4/N) a
  FactorPerDensity,  // (m/N) a
  Custom,            // l given directly
};

struct LoopWeightSpec {
  LoopWeightKind kind = LoopWeightKind::GeneralizedDDim;
  double value = 0.0;  // a for the factor forms, l for Custom

  static LoopWeightSpec preset(LoopWeightKind kind) { return {kind, 0.0}; }
  static LoopWeightSpec per_n(double a) { return {LoopWeightKind::FactorPerN, a}; }
  static LoopWeightSpec per_density(double a) { return {LoopWeightKind::FactorPerDensity, a}; }
  static LoopWeightSpec custom(double l) { return {LoopWeightKind::Custom, l}; }
};

/// Preset names: wong, nah-small, nah-large, saha, gen-ddim.
std::optional<LoopWeightKind> parse_weight_preset(std::string_view name) noexcept;
/// Factor-form names: per-n, per-density.
std::optional<LoopWeightKind> parse_factor_form(std::string_view name) noexcept;
std::string_view weight_kind_name(LoopWeightKind kind) noexcept;
/// e.g. "gen-ddim", "per-density:6", "custom:0.0002".
std::string describe(const LoopWeightSpec& spec);

/// Throws InvalidWeight when the result is negative or not finite and
/// InvalidMarkedSet when m < 1.
double resolve_loop_weight(const LoopWeightSpec& spec, const GridSpec& grid, int m);

}  // namespace lqw
