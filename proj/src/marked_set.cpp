#include "lqw/marked_set.hpp"

#include <algorithm>
#include <set>

#include "lqw/error.hpp"

namespace lqw {

void validate_marked(std::span<const VertexCoord> vertices, const GridSpec& grid) {
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    if (!is_valid(v, grid)) {
      throw Error(ErrorCode::InvalidCoordinate,
                  "marked vertex #" + std::to_string(i) + " " + to_string(v) + " lies outside the grid (d=" +
                      std::to_string(grid.dims()) + ", L=" + std::to_string(grid.side()) + ")");
    }
    if (!seen.insert(vertex_index(v, grid)).second) {
      throw Error(ErrorCode::DuplicateVertex, "marked vertex #" + std::to_string(i) + " " + to_string(v) +
                                                  " appears more than once");
    }
  }
}

MarkedSet::MarkedSet(const GridSpec& grid, std::vector<VertexCoord> vertices)
    : grid_(grid), vertices_(std::move(vertices)) {
  validate_marked(vertices_, grid_);
  indices_.reserve(vertices_.size());
  for (const auto& v : vertices_) indices_.push_back(vertex_index(v, grid_));
  std::sort(indices_.begin(), indices_.end());
}

}  // namespace lqw
