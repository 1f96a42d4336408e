#pragma once

// Reference implementations used only by tests. They deliberately share no
// code path with the library routines they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "lrrt/grid_world.hpp"
#include "lrrt/planner.hpp"
#include "lrrt/region.hpp"

namespace lrrt::testing {

/// Number of 4-connected free components, by recursive-free flood fill.
inline int free_components(const GridMaze& maze, std::size_t* free_cells = nullptr) {
  std::vector<int> label(maze.cells.size(), -1);
  int components = 0;
  std::size_t count = 0;
  for (std::size_t seed = 0; seed < maze.cells.size(); ++seed) {
    if (maze.cells[seed] || label[seed] >= 0) continue;
    std::vector<std::size_t> stack{seed};
    label[seed] = components;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      const int r = static_cast<int>(i) / maze.cols, c = static_cast<int>(i) % maze.cols;
      const int dr[] = {1, -1, 0, 0}, dc[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nr = r + dr[k], nc = c + dc[k];
        if (nr < 0 || nc < 0 || nr >= maze.rows || nc >= maze.cols) continue;
        const std::size_t j = static_cast<std::size_t>(nr) * maze.cols + nc;
        if (maze.cells[j] || label[j] >= 0) continue;
        label[j] = components;
        stack.push_back(j);
      }
    }
    ++components;
  }
  if (free_cells) *free_cells = count;
  return components;
}

/// Dijkstra with a binary heap and unit edge weights; returns the number
/// of edges on a shortest path or -1.
inline int dijkstra_distance(const GridMaze& maze, Block from, Block to) {
  const int n = maze.rows * maze.cols;
  std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const int s = from.row * maze.cols + from.col;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const int r = u / maze.cols, c = u % maze.cols;
    const int nbrs[4][2] = {{r + 1, c}, {r - 1, c}, {r, c + 1}, {r, c - 1}};
    for (const auto& nb : nbrs) {
      if (nb[0] < 0 || nb[1] < 0 || nb[0] >= maze.rows || nb[1] >= maze.cols) continue;
      const int v = nb[0] * maze.cols + nb[1];
      if (maze.cells[v]) continue;
      if (d + 1.0 < dist[v]) {
        dist[v] = d + 1.0;
        heap.push({dist[v], v});
      }
    }
  }
  const double d = dist[to.row * maze.cols + to.col];
  return std::isinf(d) ? -1 : static_cast<int>(d);
}

/// Exhaustive nearest with an explicit (distance, index) comparison.
inline int brute_nearest(const std::vector<Point>& points, Point q) {
  int best = -1;
  double best_d = 0.0;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const double dx = points[i].x - q.x, dy = points[i].y - q.y;
    const double d = dx * dx + dy * dy;
    if (best < 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

/// Argmax by explicit loop, lowest index on ties.
inline int argmax_loop(const RegionMap& r, int y, int x) {
  int best = 0;
  for (int k = 1; k < r.n_classes; ++k)
    if (r.at(y, x, k) > r.at(y, x, best)) best = k;
  return best;
}

/// Cross-entropy via the naive softmax (no max shift).
inline double naive_cross_entropy(const double* scores, int n, int truth) {
  double z = 0.0;
  for (int k = 0; k < n; ++k) z += std::exp(scores[k]);
  return -std::log(std::exp(scores[truth]) / z);
}

/// Recomputes a node's cost by summing edge lengths up to the root.
inline double cost_from_scratch(const Tree& tree, int node) {
  double total = 0.0;
  for (int at = node; tree.node(at).parent >= 0; at = tree.node(at).parent) {
    const Point a = tree.node(at).position, b = tree.node(tree.node(at).parent).position;
    total += std::hypot(a.x - b.x, a.y - b.y);
  }
  return total;
}

}  // namespace lrrt::testing
