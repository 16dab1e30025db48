#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lqw/grid.hpp"

namespace lqw {

/// Throws DuplicateVertex or InvalidCoordinate; does nothing for a valid list.
void validate_marked(std::span<const VertexCoord> vertices, const GridSpec& grid);

/// The solution vertices of a search. Keeps the caller's ordering for
/// reporting and a sorted copy of the linear indices for the oracle pass.
class MarkedSet {
 public:
  MarkedSet(const GridSpec& grid, std::vector<VertexCoord> vertices);

  static MarkedSet none(const GridSpec& grid) { return MarkedSet(grid, {}); }

  const GridSpec& grid() const noexcept { return grid_; }
  const std::vector<VertexCoord>& vertices() const noexcept { return vertices_; }
  std::span<const std::int64_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

 private:
  GridSpec grid_;
  std::vector<VertexCoord> vertices_;
  std::vector<std::int64_t> indices_;
};

}  // namespace lqw
