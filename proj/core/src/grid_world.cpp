#include "lrrt/grid_world.hpp"

#include <algorithm>
#include <deque>

#include "lrrt/errors.hpp"
#include "lrrt/rng.hpp"

namespace lrrt {

namespace {

constexpr std::uint64_t kEndpointStream = 0x656E64706F696E74ULL;  // "endpoint"

std::size_t index_of(const GridMaze& maze, Block b) {
  return static_cast<std::size_t>(b.row) * maze.cols + b.col;
}

// Farthest reachable cell and its distance from `from`.
std::pair<Block, int> farthest(const GridMaze& maze, Block from) {
  const auto dist = block_distances(maze, from);
  Block best = from;
  int best_d = 0;
  for (int r = 0; r < maze.rows; ++r) {
    for (int c = 0; c < maze.cols; ++c) {
      const int d = dist[static_cast<std::size_t>(r) * maze.cols + c];
      if (d > best_d) {
        best_d = d;
        best = {r, c};
      }
    }
  }
  return {best, best_d};
}

}  // namespace

std::vector<Block> GridMaze::free_cells() const {
  std::vector<Block> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!is_obstacle({r, c})) out.push_back({r, c});
  return out;
}

std::size_t GridMaze::free_count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 0));
}

GridMaze GridMaze::from_rows(const std::vector<std::string>& text) {
  GridMaze maze;
  maze.rows = static_cast<int>(text.size());
  maze.cols = text.empty() ? 0 : static_cast<int>(text.front().size());
  maze.cells.assign(static_cast<std::size_t>(maze.rows) * maze.cols, 0);
  for (int r = 0; r < maze.rows; ++r) {
    if (static_cast<int>(text[r].size()) != maze.cols)
      throw InvalidArgument("from_rows: ragged maze text");
    for (int c = 0; c < maze.cols; ++c) {
      switch (text[r][c]) {
        case '#': maze.set_obstacle({r, c}, true); break;
        case '.': break;
        case 'S': maze.start = {r, c}; break;
        case 'G': maze.goal = {r, c}; break;
        default: throw InvalidArgument("from_rows: unexpected character");
      }
    }
  }
  return maze;
}

std::vector<int> block_distances(const GridMaze& maze, Block from) {
  std::vector<int> dist(maze.cells.size(), -1);
  if (!maze.is_free(from)) return dist;
  std::deque<Block> queue{from};
  dist[index_of(maze, from)] = 0;
  while (!queue.empty()) {
    const Block cur = queue.front();
    queue.pop_front();
    const int d = dist[index_of(maze, cur)];
    for (const Block& off : kNeighbourOffsets) {
      const Block nb{cur.row + off.row, cur.col + off.col};
      if (!maze.is_free(nb) || dist[index_of(maze, nb)] >= 0) continue;
      dist[index_of(maze, nb)] = d + 1;
      queue.push_back(nb);
    }
  }
  return dist;
}

GridMaze generate_maze(int m, std::uint64_t seed) {
  if (m % 2 == 0 || m < kMinMazeSize || m > kMaxMazeSize)
    throw InvalidArgument("generate_maze: m must be odd and in [5, 99], got " +
                          std::to_string(m));
  GridMaze maze;
  maze.rows = maze.cols = m;
  maze.seed = seed;
  maze.cells.assign(static_cast<std::size_t>(m) * m, 1);

  // Rooms sit on odd coordinates; walls between rooms are carved as the
  // depth-first walk advances.
  const int rooms = (m - 1) / 2;
  SplitMix64 rng(seed);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(rooms) * rooms, 0);
  auto room_block = [](int rr, int rc) { return Block{2 * rr + 1, 2 * rc + 1}; };

  const int r0 = static_cast<int>(rng.below(rooms));
  const int c0 = static_cast<int>(rng.below(rooms));
  std::vector<std::pair<int, int>> stack{{r0, c0}};
  visited[static_cast<std::size_t>(r0) * rooms + c0] = 1;
  maze.set_obstacle(room_block(r0, c0), false);

  while (!stack.empty()) {
    const auto [rr, rc] = stack.back();
    std::pair<int, int> options[4];
    int count = 0;
    for (const Block& off : kNeighbourOffsets) {
      const int nr = rr + off.row;
      const int nc = rc + off.col;
      if (nr < 0 || nr >= rooms || nc < 0 || nc >= rooms) continue;
      if (visited[static_cast<std::size_t>(nr) * rooms + nc]) continue;
      options[count++] = {nr, nc};
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    const auto [nr, nc] = options[rng.below(static_cast<std::uint64_t>(count))];
    visited[static_cast<std::size_t>(nr) * rooms + nc] = 1;
    maze.set_obstacle({rr + nr + 1, rc + nc + 1}, false);  // wall between
    maze.set_obstacle(room_block(nr, nc), false);
    stack.push_back({nr, nc});
  }

  return place_endpoints(std::move(maze), combine_seed(seed, kEndpointStream));
}

GridMaze place_endpoints(GridMaze maze, std::uint64_t seed) {
  const auto free = maze.free_cells();
  if (free.size() < 2)
    throw InvalidArgument("place_endpoints: maze needs at least 2 free cells");

  // Double-sweep BFS: exact diameter on trees (perfect mazes), a lower
  // bound otherwise.
  const auto [far_cell, unused] = farthest(maze, free.front());
  (void)unused;
  const int diameter = farthest(maze, far_cell).second;
  const int required = std::max(1, std::min(std::max(maze.rows, maze.cols), diameter));

  SplitMix64 rng(seed);
  for (int draw = 0; draw < kMaxEndpointDraws; ++draw) {
    const Block a = free[rng.below(free.size())];
    const Block b = free[rng.below(free.size())];
    if (a == b) continue;
    const auto dist = block_distances(maze, a);
    if (dist[index_of(maze, b)] >= required) {
      maze.start = a;
      maze.goal = b;
      return maze;
    }
  }
  throw Error("place_endpoints: no admissible start/goal pair after " +
              std::to_string(kMaxEndpointDraws) + " draws (degenerate maze)");
}

int default_block_px(int m, int canvas_px) {
  if (m <= 31 && 8 * m <= canvas_px) return 8;
  return std::max(2, canvas_px / m);
}

Pixel maze_origin(const GridMaze& maze, int block_px, int canvas_px) {
  return {(canvas_px - maze.cols * block_px) / 2, (canvas_px - maze.rows * block_px) / 2};
}

WorkspaceMap rasterize(const GridMaze& maze, int block_px, int canvas_px) {
  if (block_px < 1) throw InvalidArgument("rasterize: block_px must be >= 1");
  if (canvas_px < maze.rows * block_px || canvas_px < maze.cols * block_px)
    throw InvalidArgument("rasterize: canvas of " + std::to_string(canvas_px) +
                          " px is too small for the maze");
  WorkspaceMap map;
  map.width = map.height = canvas_px;
  map.block_px = block_px;
  map.occupancy.assign(static_cast<std::size_t>(canvas_px) * canvas_px, 1);
  const Pixel origin = maze_origin(maze, block_px, canvas_px);
  for (int r = 0; r < maze.rows; ++r) {
    for (int c = 0; c < maze.cols; ++c) {
      if (maze.is_obstacle({r, c})) continue;
      for (int dy = 0; dy < block_px; ++dy) {
        const std::size_t row = static_cast<std::size_t>(origin.y + r * block_px + dy);
        auto* line = map.occupancy.data() + row * canvas_px + origin.x + c * block_px;
        std::fill(line, line + block_px, 0);
      }
    }
  }
  auto center = [&](Block b) {
    return Pixel{origin.x + b.col * block_px + block_px / 2,
                 origin.y + b.row * block_px + block_px / 2};
  };
  map.start = center(maze.start);
  map.goal = center(maze.goal);
  return map;
}

BlockView lift_to_blocks(const WorkspaceMap& map) {
  const int b = map.block_px;
  if (b < 1) throw InvalidArgument("lift_to_blocks: block_px must be >= 1");
  auto phase = [b](int v) { return ((v - b / 2) % b + b) % b; };
  BlockView view;
  view.block_px = b;
  view.origin = {phase(map.start.x), phase(map.start.y)};
  GridMaze& maze = view.maze;
  maze.cols = (map.width - view.origin.x) / b;
  maze.rows = (map.height - view.origin.y) / b;
  maze.cells.assign(static_cast<std::size_t>(maze.rows) * maze.cols, 0);
  for (int r = 0; r < maze.rows; ++r) {
    for (int c = 0; c < maze.cols; ++c) {
      bool blocked = false;
      for (int dy = 0; dy < b && !blocked; ++dy)
        for (int dx = 0; dx < b && !blocked; ++dx)
          blocked = map.is_obstacle({view.origin.x + c * b + dx, view.origin.y + r * b + dy});
      maze.set_obstacle({r, c}, blocked);
    }
  }
  auto block_of = [&](Pixel p) {
    return Block{(p.y - view.origin.y) / b, (p.x - view.origin.x) / b};
  };
  maze.start = block_of(map.start);
  maze.goal = block_of(map.goal);
  return view;
}

}  // namespace lrrt
