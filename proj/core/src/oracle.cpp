#include "lrrt/oracle.hpp"

#include <algorithm>
#include <deque>

#include "lrrt/errors.hpp"

namespace lrrt {

namespace {

std::size_t index_of(const GridMaze& maze, Block b) {
  return static_cast<std::size_t>(b.row) * maze.cols + b.col;
}

ClassGrid labels_on_lattice(const GroundTruth& truth, Pixel origin,
                            int block_px, int width, int height,
                            const std::vector<std::uint8_t>& occupancy) {
  ClassGrid labels(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (occupancy[static_cast<std::size_t>(y) * width + x])
        labels.set(y, x, RegionClass::kObstacle);
  for (const Block& b : truth.promising_blocks) {
    for (int dy = 0; dy < block_px; ++dy)
      for (int dx = 0; dx < block_px; ++dx)
        labels.set(origin.y + b.row * block_px + dy, origin.x + b.col * block_px + dx,
                   RegionClass::kPromising);
  }
  return labels;
}

}  // namespace

std::vector<Block> shortest_block_path(const GridMaze& maze) {
  if (!maze.is_free(maze.start) || !maze.is_free(maze.goal)) throw UnreachableError();
  constexpr int kNone = -1;
  std::vector<int> parent(maze.cells.size(), kNone);
  std::vector<std::uint8_t> seen(maze.cells.size(), 0);
  std::deque<Block> queue{maze.start};
  seen[index_of(maze, maze.start)] = 1;
  while (!queue.empty()) {
    const Block cur = queue.front();
    queue.pop_front();
    if (cur == maze.goal) break;
    for (const Block& off : kNeighbourOffsets) {
      const Block nb{cur.row + off.row, cur.col + off.col};
      if (!maze.is_free(nb) || seen[index_of(maze, nb)]) continue;
      seen[index_of(maze, nb)] = 1;
      parent[index_of(maze, nb)] = static_cast<int>(index_of(maze, cur));
      queue.push_back(nb);
    }
  }
  if (!seen[index_of(maze, maze.goal)]) throw UnreachableError();
  std::vector<Block> path;
  for (int at = static_cast<int>(index_of(maze, maze.goal)); at != kNone; at = parent[at])
    path.push_back({at / maze.cols, at % maze.cols});
  std::reverse(path.begin(), path.end());
  return path;
}

GroundTruth label_ground_truth(const GridMaze& maze, int dilation) {
  if (dilation < 0) throw InvalidArgument("label_ground_truth: dilation must be >= 0");
  GroundTruth truth;
  truth.maze_id = maze.seed;
  truth.path_blocks = shortest_block_path(maze);

  // Multi-source BFS from the path, bounded by `dilation` steps.
  std::vector<int> depth(maze.cells.size(), -1);
  std::deque<Block> queue;
  for (const Block& b : truth.path_blocks) {
    depth[index_of(maze, b)] = 0;
    queue.push_back(b);
  }
  while (!queue.empty()) {
    const Block cur = queue.front();
    queue.pop_front();
    const int d = depth[index_of(maze, cur)];
    if (d == dilation) continue;
    for (const Block& off : kNeighbourOffsets) {
      const Block nb{cur.row + off.row, cur.col + off.col};
      if (!maze.is_free(nb) || depth[index_of(maze, nb)] >= 0) continue;
      depth[index_of(maze, nb)] = d + 1;
      queue.push_back(nb);
    }
  }
  for (int r = 0; r < maze.rows; ++r)
    for (int c = 0; c < maze.cols; ++c)
      if (depth[index_of(maze, {r, c})] >= 0) truth.promising_blocks.push_back({r, c});
  return truth;
}

std::vector<Pixel> promising_pixels(const GroundTruth& truth, const GridMaze& maze,
                                    int block_px, int canvas_px) {
  const Pixel origin = maze_origin(maze, block_px, canvas_px);
  std::vector<Pixel> out;
  out.reserve(truth.promising_blocks.size() * block_px * block_px);
  for (const Block& b : truth.promising_blocks)
    for (int dy = 0; dy < block_px; ++dy)
      for (int dx = 0; dx < block_px; ++dx)
        out.push_back({origin.x + b.col * block_px + dx, origin.y + b.row * block_px + dy});
  std::sort(out.begin(), out.end(),
            [](Pixel a, Pixel b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  return out;
}

ClassGrid ground_truth_labels(const GridMaze& maze, int block_px, int canvas_px, int dilation) {
  const WorkspaceMap map = rasterize(maze, block_px, canvas_px);
  const GroundTruth truth = label_ground_truth(maze, dilation);
  return labels_on_lattice(truth, maze_origin(maze, block_px, canvas_px), block_px,
                           map.width, map.height, map.occupancy);
}

ClassGrid ground_truth_labels(const WorkspaceMap& map, int dilation) {
  const BlockView view = lift_to_blocks(map);
  const GroundTruth truth = label_ground_truth(view.maze, dilation);
  return labels_on_lattice(truth, view.origin, view.block_px, map.width,
                           map.height, map.occupancy);
}

RegionMap oracle_region(const GridMaze& maze, int block_px, int canvas_px, int dilation) {
  return one_hot(ground_truth_labels(maze, block_px, canvas_px, dilation));
}

RegionMap oracle_region(const WorkspaceMap& map, int dilation) {
  return one_hot(ground_truth_labels(map, dilation));
}

}  // namespace lrrt
