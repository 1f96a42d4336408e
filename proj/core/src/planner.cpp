#include "lrrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lrrt/errors.hpp"

namespace lrrt {

// ---------------------------------------------------------------------------
// Tree

Tree::Tree(Point root) {
  nodes_.push_back({root, -1, 0.0});
  children_.emplace_back();
}

int Tree::add(Point position, int parent) {
  const TreeNode& p = nodes_[static_cast<std::size_t>(parent)];
  const double cost = p.cost + distance(p.position, position);
  nodes_.push_back({position, parent, cost});
  children_.emplace_back();
  const int id = size() - 1;
  children_[static_cast<std::size_t>(parent)].push_back(id);
  return id;
}

void Tree::reparent(int node, int new_parent) {
  auto& old_siblings = children_[static_cast<std::size_t>(nodes_[node].parent)];
  old_siblings.erase(std::find(old_siblings.begin(), old_siblings.end(), node));
  children_[static_cast<std::size_t>(new_parent)].push_back(node);
  nodes_[node].parent = new_parent;

  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    TreeNode& n = nodes_[static_cast<std::size_t>(cur)];
    const TreeNode& p = nodes_[static_cast<std::size_t>(n.parent)];
    n.cost = p.cost + distance(p.position, n.position);
    for (int child : children_[static_cast<std::size_t>(cur)]) stack.push_back(child);
  }
}

// ---------------------------------------------------------------------------
// Primitives

PlannerConfig resolve_config(PlannerConfig config, const WorkspaceMap& map) {
  if (config.goal_radius <= 0.0) config.goal_radius = map.block_px / 2.0;
  if (config.rewire_radius <= 0.0) config.rewire_radius = 2.0 * config.step_size;
  if (!(config.step_size > 0.0)) throw InvalidArgument("step_size must be > 0");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0))
    throw InvalidArgument("alpha must lie in [0, 1]");
  if (!(config.goal_radius > 0.0)) throw InvalidArgument("goal_radius must be > 0");
  if (!(config.rewire_radius >= config.step_size))
    throw InvalidArgument("rewire_radius must be >= step_size");
  if (!(config.collision_resolution > 0.0))
    throw InvalidArgument("collision_resolution must be > 0");
  if (config.max_iterations < 0) throw InvalidArgument("max_iterations must be >= 0");
  return config;
}

Point steer(Point from, Point toward, double step) {
  const double d = distance(from, toward);
  if (d <= step) return toward;
  const double s = step / d;
  return {from.x + (toward.x - from.x) * s, from.y + (toward.y - from.y) * s};
}

bool obstacle_free(const WorkspaceMap& map, Point a, Point b, double resolution) {
  auto free_at = [&map](double x, double y) {
    if (!(x >= 0.0 && y >= 0.0 && x < map.width && y < map.height)) return false;
    return !map.is_obstacle({static_cast<int>(x), static_cast<int>(y)});
  };
  const double len = distance(a, b);
  const int steps = len > 0.0 ? static_cast<int>(std::ceil(len / resolution)) : 0;
  for (int i = 0; i <= steps; ++i) {
    const double t = steps == 0 ? 0.0 : static_cast<double>(i) / steps;
    if (!free_at(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)) return false;
  }
  return true;
}

bool segment_clear(const WorkspaceMap& map, Point a, Point b) {
  auto inside = [&map](Point p) { return p.x >= 0.0 && p.y >= 0.0 && p.x < map.width && p.y < map.height; };
  if (!inside(a) || !inside(b)) return false;
  // Slack so rounding in the interpolation never drops a touched pixel.
  constexpr double kEps = 1e-9;
  if (a.x > b.x) std::swap(a, b);
  const double dx = b.x - a.x;
  const int col_lo = std::max(0, static_cast<int>(std::ceil(a.x - kEps)) - 1);
  const int col_hi = std::min(map.width - 1, static_cast<int>(std::floor(b.x + kEps)));
  for (int col = col_lo; col <= col_hi; ++col) {
    const double x0 = std::max(a.x, static_cast<double>(col) - kEps);
    const double x1 = std::min(b.x, static_cast<double>(col + 1) + kEps);
    if (x0 > x1) continue;
    double y0 = a.y, y1 = b.y;
    if (dx > 0.0) {
      y0 = a.y + (b.y - a.y) * ((x0 - a.x) / dx);
      y1 = a.y + (b.y - a.y) * ((x1 - a.x) / dx);
    }
    if (y0 > y1) std::swap(y0, y1);
    const int row_lo = std::max(0, static_cast<int>(std::ceil(y0 - kEps)) - 1);
    const int row_hi = std::min(map.height - 1, static_cast<int>(std::floor(y1 + kEps)));
    for (int row = row_lo; row <= row_hi; ++row)
      if (map.is_obstacle({col, row})) return false;
  }
  return true;
}

namespace {

bool edge_free(const WorkspaceMap& map, Point a, Point b, const PlannerConfig& config) {
  return config.edge_check == EdgeCheck::kSwept ? segment_clear(map, a, b)
                                                : obstacle_free(map, a, b, config.collision_resolution);
}

}  // namespace

int extend_and_rewire(Tree& tree, Point x_new, int nearest_node, const WorkspaceMap& map,
                      const PlannerConfig& config, NearestIndex* index) {
  std::vector<int> neighbours;
  if (index)
    index->near(tree, x_new, config.rewire_radius, neighbours);
  else
    neighbours = near(tree, x_new, config.rewire_radius);

  struct Candidate {
    double cost;
    int id;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(neighbours.size() + 1);
  for (int id : neighbours)
    candidates.push_back({tree.node(id).cost + distance(tree.node(id).position, x_new), id});
  if (!std::binary_search(neighbours.begin(), neighbours.end(), nearest_node))
    candidates.push_back(
        {tree.node(nearest_node).cost + distance(tree.node(nearest_node).position, x_new),
         nearest_node});
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.id < b.id);
  });

  // Cheapest-first, so the first collision-free candidate is the argmin.
  int parent = -1;
  for (const Candidate& c : candidates) {
    if (edge_free(map, tree.node(c.id).position, x_new, config)) {
      parent = c.id;
      break;
    }
  }
  if (parent < 0)
    throw InvalidArgument("extend_and_rewire: no collision-free parent for the new point");

  const int id = tree.add(x_new, parent);
  if (index) index->insert(id, x_new);

  const double new_cost = tree.node(id).cost;
  for (int nb : neighbours) {
    if (nb == parent) continue;
    const TreeNode& n = tree.node(nb);
    if (new_cost + distance(x_new, n.position) < n.cost &&
        edge_free(map, x_new, n.position, config))
      tree.reparent(nb, id);
  }
  return id;
}

std::vector<Point> extract_path(const Tree& tree, int goal_node) {
  std::vector<Point> path;
  for (int at = goal_node; at >= 0; at = tree.node(at).parent) path.push_back(tree.node(at).position);
  std::reverse(path.begin(), path.end());
  return path;
}

double path_length(const std::vector<Point>& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += distance(path[i - 1], path[i]);
  return total;
}

std::optional<std::string> validate_tree(const Tree& tree, const WorkspaceMap& map,
                                         double resolution) {
  const int n = tree.size();
  if (n == 0) return "tree is empty";
  if (tree.node(0).parent != -1) return "node 0 is not a root";
  if (tree.node(0).cost != 0.0) return "root cost is not zero";
  for (int i = 1; i < n; ++i) {
    const int p = tree.node(i).parent;
    if (p < 0 || p >= n) return "node " + std::to_string(i) + " has no valid parent";
    const auto& siblings = tree.children(p);
    if (std::find(siblings.begin(), siblings.end(), i) == siblings.end())
      return "node " + std::to_string(i) + " missing from its parent's children";
    const double expected = tree.node(p).cost + distance(tree.node(p).position, tree.node(i).position);
    if (std::abs(expected - tree.node(i).cost) > 1e-9)
      return "cost inconsistency at node " + std::to_string(i);
    if (!obstacle_free(map, tree.node(p).position, tree.node(i).position, resolution))
      return "edge into node " + std::to_string(i) + " collides";
  }
  // Acyclic iff a walk down the child lists from the root reaches every node.
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  int reached = 0;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    if (seen[cur]) return "node " + std::to_string(cur) + " reached twice";
    seen[cur] = 1;
    ++reached;
    for (int c : tree.children(cur)) {
      if (tree.node(c).parent != cur) return "child list of node " + std::to_string(cur) + " is stale";
      stack.push_back(c);
    }
  }
  if (reached != n) return "tree contains a cycle or detached nodes";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Planning loop

PlanResult plan(const WorkspaceMap& map, const SampleSupport* region,
                const PlannerConfig& requested, const PlanHooks& hooks) {
  const PlannerConfig config = resolve_config(requested, map);
  if (!map.is_free(map.start)) throw InvalidArgument("plan: start lies in an obstacle");
  if (!map.is_free(map.goal)) throw InvalidArgument("plan: goal lies in an obstacle");

  PlanResult result;
  const bool use_region = config.alpha > 0.0 && region != nullptr && !region->empty();
  result.region_fallback = config.alpha > 0.0 && !use_region;
  const double alpha = use_region ? config.alpha : 0.0;

  const Point start = map.start_point();
  const Point goal = map.goal_point();
  const double width = map.width;
  const double height = map.height;

  const auto t0 = std::chrono::steady_clock::now();
  Tree tree(start);
  std::optional<NearestIndex> index;
  if (config.nearest == NearestStrategy::kGrid) {
    index.emplace(width, height, config.rewire_radius);
    index->insert(0, start);
  }
  NearestIndex* index_ptr = index ? &*index : nullptr;
  SplitMix64 rng(config.rng_seed);

  int goal_node = -1;
  bool exact_goal = false;
  // Connects the exact goal point below the node that entered the disk.
  auto reach_goal = [&](int entered) {
    const Point at = tree.node(entered).position;
    if (at == goal) {
      exact_goal = true;
      return entered;
    }
    if (edge_free(map, at, goal, config)) {
      exact_goal = true;
      return extend_and_rewire(tree, goal, entered, map, config, index_ptr);
    }
    return entered;
  };

  if (distance(start, goal) <= config.goal_radius) {
    goal_node = reach_goal(0);
    result.first_solution_iteration = 0;
  }

  int iteration = 0;
  const bool done_at_start = goal_node >= 0 && !config.optimize;
  while (!done_at_start && iteration < config.max_iterations) {
    ++iteration;
    const bool biased = rng.uniform() < alpha;
    Point sample;
    if (biased) {
      sample = sample_biased(*region, rng);
      ++result.biased_samples;
    } else {
      const double x = rng.uniform() * width;
      const double y = rng.uniform() * height;
      sample = {x, y};
    }
    if (hooks.on_sample) hooks.on_sample(sample, biased);

    const int near_id = index_ptr ? index_ptr->nearest(tree, sample) : nearest(tree, sample);
    const Point from = tree.node(near_id).position;
    const Point x_new = steer(from, sample, config.step_size);

    bool stop = false;
    if (!(x_new == from) && edge_free(map, from, x_new, config)) {
      const int id = extend_and_rewire(tree, x_new, near_id, map, config, index_ptr);
      if (distance(x_new, goal) <= config.goal_radius) {
        if (goal_node < 0) {
          goal_node = reach_goal(id);
          result.first_solution_iteration = iteration;
        } else if (!exact_goal && tree.node(id).cost < tree.node(goal_node).cost) {
          goal_node = id;
        }
        stop = !config.optimize;
      }
    }

    if (config.check_invariants) {
      if (auto err = validate_tree(tree, map, config.collision_resolution))
        throw Error("tree invariant violated at iteration " + std::to_string(iteration) +
                    ": " + *err);
    }
    if (hooks.on_iteration) hooks.on_iteration(tree, iteration);
    if (stop) break;
  }
  const auto t1 = std::chrono::steady_clock::now();

  result.iterations_used = iteration;
  result.node_count = tree.size();
  result.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  if (goal_node >= 0) {
    result.success = true;
    result.path = extract_path(tree, goal_node);
    result.path_length = path_length(result.path);
  }
  return result;
}

}  // namespace lrrt
