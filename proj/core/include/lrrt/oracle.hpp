#pragma once

#include <cstdint>
#include <vector>

#include "lrrt/grid_world.hpp"
#include "lrrt/region.hpp"

namespace lrrt {

/// Exact-search ground truth for one maze.
struct GroundTruth {
  std::uint64_t maze_id = 0;
  std::vector<Block> path_blocks;       ///< start .. goal, 4-connected
  std::vector<Block> promising_blocks;  ///< sorted, includes path_blocks
};

/// Shortest 4-connected free path from start to goal by BFS with unit edge
/// cost. Neighbours are expanded up, right, down, left, so the result is
/// deterministic. Throws UnreachableError.
std::vector<Block> shortest_block_path(const GridMaze& maze);

/// Path blocks grown by `dilation` 4-neighbour steps through free space.
GroundTruth label_ground_truth(const GridMaze& maze, int dilation = 0);

/// Pixels covered by the promising blocks once the maze is rasterised into
/// a canvas of `canvas_px`.
std::vector<Pixel> promising_pixels(const GroundTruth& truth, const GridMaze& maze,
                                    int block_px, int canvas_px);

/// Hard label grid over the rasterised canvas: promising for promising
/// pixels, obstacle for obstacle and padding pixels, free elsewhere.
ClassGrid ground_truth_labels(const GridMaze& maze, int block_px, int canvas_px,
                              int dilation = 0);

/// Same labels computed from a rasterised map via `lift_to_blocks`.
ClassGrid ground_truth_labels(const WorkspaceMap& map, int dilation = 0);

/// One-hot RegionMap of `ground_truth_labels`; a zero-learning stand-in for
/// a predicted region.
RegionMap oracle_region(const GridMaze& maze, int block_px, int canvas_px, int dilation = 0);
RegionMap oracle_region(const WorkspaceMap& map, int dilation = 0);

}  // namespace lrrt
