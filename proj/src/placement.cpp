#include "lqw/placement.hpp"

#include <cmath>
#include <sstream>

#include "lqw/error.hpp"

namespace lqw {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_count(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidPlacement, "marked set must be nonempty (m >= 1), got m=" + std::to_string(m));
}

void require_2d(const GridSpec& grid, std::string_view name) {
  if (grid.dims() != 2) {
    throw Error(ErrorCode::InvalidPlacement,
                std::string(name) + " placement is defined on 2-d grids only, got d=" + std::to_string(grid.dims()));
  }
}

void require_in_grid(const std::vector<VertexCoord>& out, const GridSpec& grid) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_valid(out[i], grid)) {
      throw Error(ErrorCode::InvalidPlacement, "placement index " + std::to_string(i) + " at " + to_string(out[i]) +
                                                   " falls outside the grid (L=" + std::to_string(grid.side()) + ")");
    }
  }
}

std::vector<VertexCoord> diagonal(const GridSpec& grid, int m) {
  require_count(m);
  if (m > grid.side()) {
    throw Error(ErrorCode::DuplicateVertex, "m=" + std::to_string(m) + " exceeds L=" + std::to_string(grid.side()) +
                                                ": stride floor(L/m) is 0 and all solutions collide");
  }
  const int stride = grid.side() / m;
  std::vector<VertexCoord> out;
  for (int i = 0; i < m; ++i) {
    out.emplace_back(std::vector<int>(static_cast<std::size_t>(grid.dims()), stride * i));
  }
  return out;
}

}  // namespace

std::string_view placement_name(const PlacementSpec& spec) noexcept {
  return std::visit(Overloaded{[](const placement::MSet&) { return "mset"; },
                               [](const placement::PSet&) { return "pset"; },
                               [](const placement::PDSet&) { return "pdset"; },
                               [](const placement::Block&) { return "block"; },
                               [](const placement::Explicit&) { return "explicit"; }},
                    spec);
}

int placement_count(const PlacementSpec& spec) noexcept {
  return std::visit(Overloaded{[](const placement::Explicit& e) { return static_cast<int>(e.vertices.size()); },
                               [](const auto& s) { return s.m; }},
                    spec);
}

MarkedSet generate_placement(const PlacementSpec& spec, const GridSpec& grid) {
  auto vertices = std::visit(
      Overloaded{
          [&](const placement::MSet& s) {
            require_2d(grid, "mset");
            require_count(s.m);
            std::vector<VertexCoord> out;
            for (int i = 0; i < s.m; ++i) out.push_back({0, 10 * i});
            require_in_grid(out, grid);
            return out;
          },
          [&](const placement::PSet& s) {
            require_2d(grid, "pset");
            return diagonal(grid, s.m);
          },
          [&](const placement::PDSet& s) { return diagonal(grid, s.m); },
          [&](const placement::Block& s) {
            require_2d(grid, "block");
            require_count(s.m);
            const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.m))));
            if (side * side != s.m) {
              throw Error(ErrorCode::InvalidPlacement,
                          "block placement needs a perfect-square m, got m=" + std::to_string(s.m));
            }
            const VertexCoord origin = s.origin.size() == 0 ? VertexCoord{0, 0} : s.origin;
            if (origin.size() != 2) throw Error(ErrorCode::InvalidPlacement, "block origin must have 2 components");
            std::vector<VertexCoord> out;
            for (int j = 0; j < side; ++j) {
              for (int i = 0; i < side; ++i) out.push_back({origin[0] + i, origin[1] + j});
            }
            require_in_grid(out, grid);
            return out;
          },
          [&](const placement::Explicit& s) {
            require_count(static_cast<int>(s.vertices.size()));
            require_in_grid(s.vertices, grid);
            return s.vertices;
          }},
      spec);
  return MarkedSet(grid, std::move(vertices));
}

std::optional<LoopWeightKind> parse_weight_preset(std::string_view name) noexcept {
  if (name == "wong") return LoopWeightKind::Wong;
  if (name == "nah-small") return LoopWeightKind::NahimovsSmall;
  if (name == "nah-large") return LoopWeightKind::NahimovsLarge;
  if (name == "saha") return LoopWeightKind::SahaBlock;
  if (name == "gen-ddim") return LoopWeightKind::GeneralizedDDim;
  return std::nullopt;
}

std::optional<LoopWeightKind> parse_factor_form(std::string_view name) noexcept {
  if (name == "per-n") return LoopWeightKind::FactorPerN;
  if (name == "per-density") return LoopWeightKind::FactorPerDensity;
  return std::nullopt;
}

std::string_view weight_kind_name(LoopWeightKind kind) noexcept {
  switch (kind) {
    case LoopWeightKind::Wong: return "wong";
    case LoopWeightKind::NahimovsSmall: return "nah-small";
    case LoopWeightKind::NahimovsLarge: return "nah-large";
    case LoopWeightKind::SahaBlock: return "saha";
    case LoopWeightKind::GeneralizedDDim: return "gen-ddim";
    case LoopWeightKind::FactorPerN: return "per-n";
    case LoopWeightKind::FactorPerDensity: return "per-density";
    case LoopWeightKind::Custom: return "custom";
  }
  return "unknown";
}

std::string describe(const LoopWeightSpec& spec) {
  std::ostringstream os;
  os << weight_kind_name(spec.kind);
  switch (spec.kind) {
    case LoopWeightKind::FactorPerN:
    case LoopWeightKind::FactorPerDensity:
    case LoopWeightKind::Custom:
      os.precision(17);
      os << ':' << spec.value;
      break;
    default:
      break;
  }
  return os.str();
}

double resolve_loop_weight(const LoopWeightSpec& spec, const GridSpec& grid, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidMarkedSet, "weight presets need m >= 1, got m=" + std::to_string(m));
  const double n = static_cast<double>(grid.size());
  const double md = m;
  double l = 0.0;
  switch (spec.kind) {
    case LoopWeightKind::Wong: l = 4.0 / n; break;
    case LoopWeightKind::NahimovsSmall: l = 4.0 * md / n; break;
    case LoopWeightKind::NahimovsLarge: l = 4.0 * (md - std::sqrt(md)) / n; break;
    case LoopWeightKind::SahaBlock: l = 4.0 / (n * (md + std::floor(std::sqrt(md) / 2.0))); break;
    case LoopWeightKind::GeneralizedDDim: l = 2.0 * grid.dims() * md / n; break;
    case LoopWeightKind::FactorPerN: l = 4.0 / n * spec.value; break;
    case LoopWeightKind::FactorPerDensity: l = md / n * spec.value; break;
    case LoopWeightKind::Custom: l = spec.value; break;
  }
  if (!(l >= 0.0) || !std::isfinite(l)) {
    throw Error(ErrorCode::InvalidWeight, "weight " + describe(spec) + " resolves to l=" + std::to_string(l) +
                                              ", which is not a finite value >= 0");
  }
  return l;
}

}  // namespace lqw
