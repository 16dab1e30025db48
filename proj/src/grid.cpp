#include "lqw/grid.hpp"

#include <limits>
#include <sstream>

#include "lqw/error.hpp"

namespace lqw {

GridSpec::GridSpec(int dims, int side) : dims_(dims), side_(side), size_(1) {
  if (dims < 1) {
    throw Error(ErrorCode::InvalidGrid, "grid needs at least one dimension, got d=" + std::to_string(dims));
  }
  if (side < 2) {
    throw Error(ErrorCode::InvalidGrid, "grid side must be at least 2, got L=" + std::to_string(side));
  }
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  for (int i = 0; i < dims; ++i) {
    if (size_ > kMax / side) {
      throw Error(ErrorCode::InvalidGrid, "L^d overflows for d=" + std::to_string(dims) +
                                              ", L=" + std::to_string(side));
    }
    size_ *= side;
  }
}

std::int64_t GridSpec::stride(int axis) const {
  if (axis < 0 || axis >= dims_) {
    throw Error(ErrorCode::OutOfRange, "axis " + std::to_string(axis) + " outside [0, d)");
  }
  std::int64_t s = 1;
  for (int i = 0; i < axis; ++i) s *= side_;
  return s;
}

std::string to_string(const VertexCoord& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

CoinDirection CoinDirection::along(int axis, int sign) {
  if (axis < 0 || (sign != 1 && sign != -1)) {
    throw Error(ErrorCode::OutOfRange, "directional coin needs axis >= 0 and sign +1/-1");
  }
  return CoinDirection(axis, sign);
}

CoinDirection CoinDirection::from_index(int index, int dims) {
  if (index < 0 || index > 2 * dims) {
    throw Error(ErrorCode::OutOfRange, "coin index " + std::to_string(index) + " outside [0, 2d]");
  }
  if (index == 2 * dims) return self_loop();
  return CoinDirection(index / 2, index % 2 == 0 ? 1 : -1);
}

int CoinDirection::index(int dims) const noexcept {
  if (is_loop()) return 2 * dims;
  return 2 * axis_ + (sign_ > 0 ? 0 : 1);
}

bool is_valid(const VertexCoord& coord, const GridSpec& grid) noexcept {
  if (coord.size() != static_cast<std::size_t>(grid.dims())) return false;
  for (int v : coord.x) {
    if (v < 0 || v >= grid.side()) return false;
  }
  return true;
}

std::int64_t vertex_index(const VertexCoord& coord, const GridSpec& grid) {
  if (!is_valid(coord, grid)) {
    throw Error(ErrorCode::InvalidCoordinate,
                "coordinate " + to_string(coord) + " is not a vertex of the " +
                    std::to_string(grid.dims()) + "-d grid with L=" + std::to_string(grid.side()));
  }
  std::int64_t index = 0;
  for (int i = grid.dims() - 1; i >= 0; --i) {
    index = index * grid.side() + coord[static_cast<std::size_t>(i)];
  }
  return index;
}

VertexCoord coord_of(std::int64_t index, const GridSpec& grid) {
  if (index < 0 || index >= grid.size()) {
    throw Error(ErrorCode::OutOfRange,
                "vertex index " + std::to_string(index) + " outside [0, " + std::to_string(grid.size()) + ")");
  }
  VertexCoord c;
  c.x.resize(static_cast<std::size_t>(grid.dims()));
  for (auto& v : c.x) {
    v = static_cast<int>(index % grid.side());
    index /= grid.side();
  }
  return c;
}

VertexCoord neighbor(const VertexCoord& coord, CoinDirection dir, const GridSpec& grid) {
  if (dir.is_loop()) {
    throw Error(ErrorCode::NotApplicable, "the self-loop has no neighbouring vertex");
  }
  if (!is_valid(coord, grid)) {
    throw Error(ErrorCode::InvalidCoordinate, "coordinate " + to_string(coord) + " is not a grid vertex");
  }
  if (dir.axis() >= grid.dims()) {
    throw Error(ErrorCode::OutOfRange, "axis " + std::to_string(dir.axis()) + " outside [0, d)");
  }
  VertexCoord out = coord;
  auto& v = out[static_cast<std::size_t>(dir.axis())];
  v = (v + dir.sign() + grid.side()) % grid.side();
  return out;
}

CoinDirection reverse(CoinDirection dir) noexcept {
  if (dir.is_loop()) return dir;
  return CoinDirection::along(dir.axis(), -dir.sign());
}

}  // namespace lqw
