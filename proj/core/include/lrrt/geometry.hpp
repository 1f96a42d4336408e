#pragma once

#include <cmath>
#include <compare>

namespace lrrt {

/// Maze cell coordinate.
struct Block {
  int row = 0;
  int col = 0;
  friend constexpr bool operator==(const Block&, const Block&) = default;
  friend constexpr auto operator<=>(const Block&, const Block&) = default;
};

/// Integer pixel coordinate. `x` is the column, `y` the row.
struct Pixel {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(const Pixel&, const Pixel&) = default;
  friend constexpr auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Continuous workspace point in pixel units. Pixel (x, y) covers
/// [x, x+1) x [y, y+1).
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

inline Point pixel_center(const Pixel& p) {
  return {p.x + 0.5, p.y + 0.5};
}

}  // namespace lrrt
