#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace fdi {

/// Row-major dense grid; (row, col) indexing matches the image convention
/// with the origin at the top-left pixel. The public API is 0-based.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using IntGrid = Grid<std::int32_t>;
using ByteGrid = Grid<std::uint8_t>;
using RealGrid = Grid<double>;

using Index = Eigen::Index;

struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Raster (row-major) ordering; the deterministic tie-break everywhere.
constexpr bool raster_less(Pixel a, Pixel b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

constexpr int chebyshev(Pixel a, Pixel b) {
  int dr = a.row - b.row;
  int dc = a.col - b.col;
  if (dr < 0) dr = -dr;
  if (dc < 0) dc = -dc;
  return dr > dc ? dr : dc;
}

struct Rect {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;

  constexpr bool contains(Pixel p) const {
    return p.row >= row && p.row < row + height && p.col >= col && p.col < col + width;
  }
};

template <typename Scalar>
bool in_bounds(const Grid<Scalar>& g, Index r, Index c) {
  return r >= 0 && r < g.rows() && c >= 0 && c < g.cols();
}

}  // namespace fdi
