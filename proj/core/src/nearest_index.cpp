#include <algorithm>
#include <cmath>
#include <limits>

#include "lrrt/errors.hpp"
#include "lrrt/planner.hpp"

namespace lrrt {

int nearest(const Tree& tree, Point query) {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  const auto& nodes = tree.nodes();
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const double d2 = squared_distance(nodes[i].position, query);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

std::vector<int> near(const Tree& tree, Point query, double radius) {
  std::vector<int> out;
  const double r2 = radius * radius;
  const auto& nodes = tree.nodes();
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (squared_distance(nodes[i].position, query) <= r2) out.push_back(i);
  return out;
}

NearestIndex::NearestIndex(double width, double height, double cell_size)
    : cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !(width > 0.0) || !(height > 0.0))
    throw InvalidArgument("NearestIndex: dimensions must be positive");
  cols_ = std::max(1, static_cast<int>(std::ceil(width / cell_size)));
  rows_ = std::max(1, static_cast<int>(std::ceil(height / cell_size)));
  buckets_.resize(static_cast<std::size_t>(cols_) * rows_);
}

int NearestIndex::cell_x(double x) const {
  return std::clamp(static_cast<int>(std::floor(x / cell_size_)), 0, cols_ - 1);
}

int NearestIndex::cell_y(double y) const {
  return std::clamp(static_cast<int>(std::floor(y / cell_size_)), 0, rows_ - 1);
}

void NearestIndex::insert(int id, Point position) {
  buckets_[static_cast<std::size_t>(cell_y(position.y)) * cols_ + cell_x(position.x)].push_back(id);
}

int NearestIndex::nearest(const Tree& tree, Point query) const {
  // Points are clamped into border cells, so the ring bound below only
  // holds for queries inside the grid; fall back to the scan otherwise.
  if (query.x < 0.0 || query.y < 0.0 || query.x >= cols_ * cell_size_ ||
      query.y >= rows_ * cell_size_)
    return lrrt::nearest(tree, query);

  const int qx = cell_x(query.x);
  const int qy = cell_y(query.y);
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto visit = [&](int cx, int cy) {
    for (int id : bucket(cx, cy)) {
      const double d2 = squared_distance(tree.node(id).position, query);
      if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
        best_d2 = d2;
        best = id;
      }
    }
  };
  const int max_ring = std::max(cols_, rows_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    const int x0 = qx - ring, x1 = qx + ring, y0 = qy - ring, y1 = qy + ring;
    for (int cx = std::max(x0, 0); cx <= std::min(x1, cols_ - 1); ++cx) {
      if (y0 >= 0) visit(cx, y0);
      if (ring > 0 && y1 < rows_) visit(cx, y1);
    }
    for (int cy = std::max(y0 + 1, 0); cy <= std::min(y1 - 1, rows_ - 1); ++cy) {
      if (x0 >= 0) visit(x0, cy);
      if (ring > 0 && x1 < cols_) visit(x1, cy);
    }
    // Anything beyond this ring is at least ring * cell_size away; ties
    // could still hide a lower index, hence the strict comparison.
    const double bound = ring * cell_size_;
    if (best >= 0 && best_d2 < bound * bound) break;
  }
  return best;
}

void NearestIndex::near(const Tree& tree, Point query, double radius,
                        std::vector<int>& out) const {
  out.clear();
  const double r2 = radius * radius;
  const int x0 = cell_x(query.x - radius), x1 = cell_x(query.x + radius);
  const int y0 = cell_y(query.y - radius), y1 = cell_y(query.y + radius);
  for (int cy = y0; cy <= y1; ++cy)
    for (int cx = x0; cx <= x1; ++cx)
      for (int id : bucket(cx, cy))
        if (squared_distance(tree.node(id).position, query) <= r2) out.push_back(id);
  std::sort(out.begin(), out.end());
}

}  // namespace lrrt
