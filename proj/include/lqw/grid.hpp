/*
 * grid.hpp - geometry of the d-dimensional periodic grid (torus).
 *
 * Vertices are linearized row-major with axis 0 varying fastest:
 *   index = x_0 + x_1 * L + x_2 * L^2 + ...
 *
 * Coin directions follow a fixed order: (axis 0, +), (axis 0, -),
 * (axis 1, +), (axis 1, -), ..., self-loop. The self-loop always sits at
 * index 2d.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace lqw {

class GridSpec {
 public:
  /// Throws Error(InvalidGrid) unless d >= 1, L >= 2 and L^d fits in int64.
  GridSpec(int dims, int side);

  int dims() const noexcept { return dims_; }
  int side() const noexcept { return side_; }
  std::int64_t size() const noexcept { return size_; }
  int coin_count() const noexcept { return 2 * dims_ + 1; }
  int loop_index() const noexcept { return 2 * dims_; }
  /// L^axis, the linear distance between neighbours along `axis`.
  std::int64_t stride(int axis) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dims_;
  int side_;
  std::int64_t size_;
};

struct VertexCoord {
  std::vector<int> x;

  VertexCoord() = default;
  explicit VertexCoord(std::vector<int> coords) : x(std::move(coords)) {}
  VertexCoord(std::initializer_list<int> coords) : x(coords) {}

  std::size_t size() const noexcept { return x.size(); }
  int operator[](std::size_t i) const { return x[i]; }
  int& operator[](std::size_t i) { return x[i]; }

  friend auto operator<=>(const VertexCoord&, const VertexCoord&) = default;
};

std::string to_string(const VertexCoord& c);

class CoinDirection {
 public:
  static CoinDirection along(int axis, int sign);
  static CoinDirection self_loop() noexcept { return CoinDirection(-1, 0); }
  /// Inverse of index(); throws OutOfRange outside [0, 2d].
  static CoinDirection from_index(int index, int dims);

  bool is_loop() const noexcept { return axis_ < 0; }
  int axis() const noexcept { return axis_; }
  int sign() const noexcept { return sign_; }
  /// Position in the canonical coin ordering for a grid of `dims` axes.
  int index(int dims) const noexcept;

  friend bool operator==(const CoinDirection&, const CoinDirection&) = default;

 private:
  CoinDirection(int axis, int sign) : axis_(axis), sign_(sign) {}
  int axis_;
  int sign_;
};

bool is_valid(const VertexCoord& coord, const GridSpec& grid) noexcept;

std::int64_t vertex_index(const VertexCoord& coord, const GridSpec& grid);
VertexCoord coord_of(std::int64_t index, const GridSpec& grid);
VertexCoord neighbor(const VertexCoord& coord, CoinDirection dir, const GridSpec& grid);
CoinDirection reverse(CoinDirection dir) noexcept;

}  // namespace lqw
