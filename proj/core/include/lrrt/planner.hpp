#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrrt/geometry.hpp"
#include "lrrt/grid_world.hpp"
#include "lrrt/region.hpp"

namespace lrrt {

enum class NearestStrategy { kLinear, kGrid };

/// kSwept tests every pixel the segment touches (closed squares), which
/// implies the sampled test at any resolution. kSampled is obstacle_free.
enum class EdgeCheck { kSwept, kSampled };

struct PlannerConfig {
  double step_size = 6.0;
  int max_iterations = 200000;
  /// Probability of drawing from the region support; 0 is plain RRT*.
  double alpha = 0.0;
  /// Radius of the goal disk; <= 0 means block_px / 2.
  double goal_radius = 0.0;
  /// Fixed neighbourhood radius for parent choice and rewiring; <= 0 means
  /// 2 * step_size.
  double rewire_radius = 0.0;
  std::uint64_t rng_seed = 0;
  double collision_resolution = 0.5;
  EdgeCheck edge_check = EdgeCheck::kSwept;
  /// Keep iterating after the first solution (anytime refinement).
  bool optimize = false;
  NearestStrategy nearest = NearestStrategy::kGrid;
  /// Validate every tree invariant after each iteration; throws on failure.
  bool check_invariants = false;
};

/// Fills defaults that depend on the map and validates the result.
PlannerConfig resolve_config(PlannerConfig config, const WorkspaceMap& map);

struct TreeNode {
  Point position;
  int parent = -1;
  double cost = 0.0;
};

/// RRT* search tree. Node 0 is the root. Costs are kept consistent with
/// parent links on every mutation.
class Tree {
 public:
  explicit Tree(Point root);

  int size() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<int>& children(int i) const { return children_[static_cast<std::size_t>(i)]; }

  int add(Point position, int parent);
  /// Moves `node` under `new_parent` and refreshes the costs of its subtree.
  void reparent(int node, int new_parent);

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::vector<int>> children_;
};

/// Index minimising euclidean distance to `query`, ties to the lowest
/// index, by exhaustive scan.
int nearest(const Tree& tree, Point query);

/// Indices within `radius` (inclusive) of `query`, ascending.
std::vector<int> near(const Tree& tree, Point query, double radius);

/// Uniform bucket grid over the canvas. Queries return exactly what the
/// linear scans return, tie rule included.
class NearestIndex {
 public:
  NearestIndex(double width, double height, double cell_size);

  void insert(int id, Point position);
  int nearest(const Tree& tree, Point query) const;
  void near(const Tree& tree, Point query, double radius, std::vector<int>& out) const;

 private:
  int cell_x(double x) const;
  int cell_y(double y) const;
  const std::vector<int>& bucket(int cx, int cy) const {
    return buckets_[static_cast<std::size_t>(cy) * cols_ + cx];
  }

  double cell_size_;
  int cols_;
  int rows_;
  std::vector<std::vector<int>> buckets_;
};

Point steer(Point from, Point toward, double step);

/// True iff every point sampled along [a, b] at spacing <= resolution,
/// both endpoints included, lies in a free in-bounds pixel.
bool obstacle_free(const WorkspaceMap& map, Point a, Point b, double resolution = 0.5);

/// True iff both endpoints are in bounds and every pixel whose closed
/// square meets [a, b] is free.
bool segment_clear(const WorkspaceMap& map, Point a, Point b);

/// Inserts `x_new` with the cheapest collision-free parent among the nodes
/// within the rewire radius (`nearest_node` is always a candidate), then
/// re-parents every neighbour whose cost strictly drops through the new
/// node. `config` must be resolved. Returns the new node's index.
int extend_and_rewire(Tree& tree, Point x_new, int nearest_node, const WorkspaceMap& map,
                      const PlannerConfig& config, NearestIndex* index = nullptr);

std::vector<Point> extract_path(const Tree& tree, int goal_node);
double path_length(const std::vector<Point>& path);

/// Checks root uniqueness, acyclicity, child-list consistency, cost
/// consistency (1e-9) and edge collision-freedom. Returns a description of
/// the first violation.
std::optional<std::string> validate_tree(const Tree& tree, const WorkspaceMap& map,
                                         double resolution);

struct PlanResult {
  bool success = false;
  std::vector<Point> path;
  int iterations_used = 0;
  int first_solution_iteration = -1;
  int node_count = 0;
  double path_length = 0.0;
  double wall_time_s = 0.0;
  std::uint64_t biased_samples = 0;
  /// alpha > 0 was requested but no usable support was given, so the run
  /// used uniform sampling only.
  bool region_fallback = false;
};

/// Optional observers; `on_iteration` runs after each iteration's tree
/// update (including the terminating one).
struct PlanHooks {
  std::function<void(Point sample, bool biased)> on_sample;
  std::function<void(const Tree& tree, int iteration)> on_iteration;
};

/// RRT* with alpha-mixed sampling. Each iteration draws u ~ U[0,1); when
/// u < alpha the sample comes from `region`, otherwise uniformly from the
/// canvas rectangle. The goal node is the exact goal point whenever it can
/// be connected from the first node entering the goal disk. Throws
/// InvalidArgument when the start or goal is not free.
PlanResult plan(const WorkspaceMap& map, const SampleSupport* region,
                const PlannerConfig& config, const PlanHooks& hooks = {});

}  // namespace lrrt
