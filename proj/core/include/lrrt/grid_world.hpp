#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrrt/geometry.hpp"

namespace lrrt {

/// Block-level maze. Cells are stored row-major, `true` meaning obstacle.
/// Generated mazes are square (rows == cols == m, m odd); hand-built mazes
/// may be rectangular.
struct GridMaze {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;
  Block start;
  Block goal;
  std::uint64_t seed = 0;

  /// Side length for square mazes (the "complexity level").
  int m() const { return rows; }

  bool in_bounds(Block b) const {
    return b.row >= 0 && b.row < rows && b.col >= 0 && b.col < cols;
  }
  bool is_obstacle(Block b) const {
    return cells[static_cast<std::size_t>(b.row) * cols + b.col] != 0;
  }
  bool is_free(Block b) const { return in_bounds(b) && !is_obstacle(b); }
  void set_obstacle(Block b, bool obstacle) {
    cells[static_cast<std::size_t>(b.row) * cols + b.col] = obstacle ? 1 : 0;
  }

  std::vector<Block> free_cells() const;
  std::size_t free_count() const;

  /// Builds a maze from text rows: '#' obstacle, '.' free, 'S' start,
  /// 'G' goal. Endpoints default to (0,0) when absent.
  static GridMaze from_rows(const std::vector<std::string>& rows);

  friend bool operator==(const GridMaze&, const GridMaze&) = default;
};

/// Pixel occupancy grid with start and goal. Occupancy is row-major,
/// `true` meaning obstacle.
struct WorkspaceMap {
  int width = 0;
  int height = 0;
  int block_px = 1;
  std::vector<std::uint8_t> occupancy;
  Pixel start;
  Pixel goal;

  bool in_bounds(Pixel p) const {
    return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
  }
  bool is_obstacle(Pixel p) const {
    return occupancy[static_cast<std::size_t>(p.y) * width + p.x] != 0;
  }
  bool is_free(Pixel p) const { return in_bounds(p) && !is_obstacle(p); }

  /// Continuous start/goal used by the planner: the pixel centers.
  Point start_point() const { return pixel_center(start); }
  Point goal_point() const { return pixel_center(goal); }

  friend bool operator==(const WorkspaceMap&, const WorkspaceMap&) = default;
};

/// 4-neighbour offsets in the fixed order up, right, down, left.
inline constexpr Block kNeighbourOffsets[4] = {{-1, 0}, {0, 1}, {1, 0}, {0, -1}};

inline constexpr int kMinMazeSize = 5;
inline constexpr int kMaxMazeSize = 99;
inline constexpr int kDefaultCanvasPx = 256;
inline constexpr int kMaxEndpointDraws = 1000;

/// Randomised depth-first ("recursive backtracker") perfect maze on the
/// odd-cell lattice. Endpoints are placed with `place_endpoints` using a
/// seed derived from `seed`.
GridMaze generate_maze(int m, std::uint64_t seed);

/// Picks distinct free start/goal cells uniformly at random, resampling
/// until their BFS distance reaches the separation threshold. The threshold
/// is max(rows, cols), clipped to the free-space diameter estimate so that
/// tiny hand-built mazes remain placeable.
GridMaze place_endpoints(GridMaze maze, std::uint64_t seed);

/// BFS step distances from `from` over 4-adjacent free cells; -1 marks
/// unreachable or obstacle cells.
std::vector<int> block_distances(const GridMaze& maze, Block from);

/// 8 for m <= 31, otherwise floor(canvas / m) with a floor of 2.
int default_block_px(int m, int canvas_px = kDefaultCanvasPx);

/// Top-left pixel of the maze inside a canvas (centred, floor on the
/// leading side).
Pixel maze_origin(const GridMaze& maze, int block_px, int canvas_px);

/// Rasterises the maze into a canvas_px x canvas_px map. Padding is
/// obstacle.
WorkspaceMap rasterize(const GridMaze& maze, int block_px, int canvas_px);

/// Block lattice recovered from a rasterised map.
struct BlockView {
  GridMaze maze;
  Pixel origin;
  int block_px = 1;
};

/// Recovers the block lattice of `map`. The lattice phase comes from the
/// start block position; a block is free iff all of its pixels are free.
/// Pixels outside the lattice are ignored.
BlockView lift_to_blocks(const WorkspaceMap& map);

}  // namespace lrrt
