// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lrrt/lrrt.hpp"
#include "test_oracles.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMazeBase = 2021;
constexpr std::uint64_t kBenchBase = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

lrrt::GridMaze acceptance_maze(int m, int i) {
  return lrrt::generate_maze(m, lrrt::sample_seed(kMazeBase, m, i));
}

// Oracle-guided comparison -------------------------------------------------

Outcome oracle_comparison(int trials, int mazes_per_level) {
  const std::vector<int> levels{25, 35, 45};
  std::vector<lrrt::BenchEnv> envs;
  for (int m : levels) {
    const int b = lrrt::default_block_px(m);
    for (int i = 0; i < mazes_per_level; ++i) {
      const lrrt::GridMaze maze = acceptance_maze(m, i);
      lrrt::BenchEnv env;
      env.id = fmt("m%d_%02d", m, i);
      env.complexity = m;
      env.map = lrrt::rasterize(maze, b, lrrt::kDefaultCanvasPx);
      env.support = lrrt::build_support(
          lrrt::classify(lrrt::oracle_region(maze, b, lrrt::kDefaultCanvasPx)), env.map);
      envs.push_back(std::move(env));
    }
  }
  const std::vector<lrrt::PlannerSpec> planners{lrrt::parse_planner_spec("rrt"),
                                                lrrt::parse_planner_spec("lrrt:0.8")};
  lrrt::BenchOptions options;
  options.trials = trials;
  options.base_seed = kBenchBase;
  options.config.max_iterations = 200000;
  const lrrt::BenchResult result = lrrt::run_benchmark(envs, planners, options);

  bool ok = true;
  std::ostringstream detail;
  int env_success_bad = 0, env_mean_bad = 0, compared = 0;
  for (const auto& env : envs) {
    const auto* a = result.summary.find("rrt", env.id);
    const auto* b = result.summary.find("lrrt:0.8", env.id);
    if (b->success_rate < a->success_rate) {
      ++env_success_bad;
      std::printf("  %s: success %.2f < %.2f\n", env.id.c_str(), b->success_rate, a->success_rate);
    }
    if (a->successes == 0 || b->successes == 0) continue;
    ++compared;
    if (!(b->iterations.mean < a->iterations.mean) || !(b->nodes.mean < a->nodes.mean)) {
      ++env_mean_bad;
      std::printf("  %s: iterations %.1f vs %.1f, nodes %.1f vs %.1f\n", env.id.c_str(),
                  b->iterations.mean, a->iterations.mean, b->nodes.mean, a->nodes.mean);
    }
  }
  for (const auto& r : result.rows)
    if (!r.error.empty()) return {false, "planner error on " + r.env + ": " + r.error};
  ok = env_success_bad == 0 && env_mean_bad == 0;
  detail << compared << " envs compared, " << env_success_bad << " with lower success, "
         << env_mean_bad << " without strictly lower means;";

  for (int m : levels) {
    const auto at_level = [m](const lrrt::TrialStats& r) { return r.complexity == m; };
    const auto it = lrrt::compare(result.rows, "rrt", "lrrt:0.8", lrrt::BenchMetric::kIterations, at_level);
    const auto nd = lrrt::compare(result.rows, "rrt", "lrrt:0.8", lrrt::BenchMetric::kNodes, at_level);
    int sa = 0, sb = 0, n = 0;
    for (const auto& r : result.rows) {
      if (r.complexity != m) continue;
      (r.planner == "rrt" ? sa : sb) += r.success;
      n += r.planner == "rrt";
    }
    ok = ok && it.p_value < 0.01 && nd.p_value < 0.01 && it.ratio < 1.0 && nd.ratio < 1.0;
    // Informational only: node counts over pairs where both runs succeeded.
    std::map<std::pair<std::string, int>, const lrrt::TrialStats*> base;
    for (const auto& r : result.rows)
      if (r.complexity == m && r.planner == "rrt") base[{r.env, r.trial}] = &r;
    int lower = 0, higher = 0;
    for (const auto& r : result.rows) {
      if (r.complexity != m || r.planner != "lrrt:0.8" || !r.success) continue;
      const auto* a = base.at({r.env, r.trial});
      if (!a->success) continue;
      lower += r.node_count < a->node_count;
      higher += r.node_count > a->node_count;
    }
    std::printf("  info m=%d nodes over both-success pairs: lrrt lower %d, higher %d, p=%.2g\n", m, lower,
                higher, lrrt::sign_test_p(lower, higher));
    detail << fmt(" m=%d success %d/%d vs %d/%d, iter ratio %.3f p=%.2g, node ratio %.3f p=%.2g;", m,
                  sb, n, sa, n, it.ratio, it.p_value, nd.ratio, nd.p_value);
  }
  return {ok, detail.str()};
}

// Alpha mix ------------------------------------------------------------------

Outcome alpha_mix() {
  const lrrt::GridMaze maze = acceptance_maze(25, 0);
  const int b = lrrt::default_block_px(25);
  const lrrt::WorkspaceMap map = lrrt::rasterize(maze, b, lrrt::kDefaultCanvasPx);
  const lrrt::SampleSupport support =
      lrrt::build_support(lrrt::classify(lrrt::oracle_region(maze, b, lrrt::kDefaultCanvasPx)), map);
  bool ok = true;
  std::string detail;
  for (double alpha : {0.5, 0.8}) {
    std::uint64_t total = 0, biased = 0;
    lrrt::PlanHooks hooks;
    hooks.on_sample = [&](lrrt::Point, bool is_biased) {
      ++total;
      biased += is_biased;
    };
    lrrt::PlannerConfig config;
    config.alpha = alpha;
    config.max_iterations = 100000;
    config.optimize = true;
    config.rng_seed = 99;
    const auto result = lrrt::plan(map, &support, config, hooks);
    const double rate = static_cast<double>(biased) / static_cast<double>(total);
    ok = ok && total >= 100000 && std::abs(rate - alpha) <= 0.01 && result.biased_samples == biased;
    detail += fmt(" alpha=%.1f: %llu/%llu = %.4f;", alpha, static_cast<unsigned long long>(biased),
                  static_cast<unsigned long long>(total), rate);
  }
  return {ok, detail};
}

// Metric equivalence -----------------------------------------------------------

Outcome metric_equivalence() {
  lrrt::SplitMix64 rng(31337);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int h = 8 + static_cast<int>(rng.below(40)), w = 8 + static_cast<int>(rng.below(40));
    lrrt::ClassGrid truth(h, w), pred(h, w);
    for (auto& v : truth.labels) v = static_cast<std::uint8_t>(rng.below(3));
    for (auto& v : pred.labels) v = static_cast<std::uint8_t>(rng.below(3));
    truth.set(0, 0, lrrt::RegionClass::kPromising);
    const auto report = lrrt::combined_metric(pred, truth);
    const double direct = lrrt::direct_metric(pred, truth);
    worst = std::max(worst, std::abs(direct - ((1.0 - report.accuracy) + report.redundancy)));
    worst = std::max(worst, std::abs(direct - report.metric));
  }
  const lrrt::GridMaze maze = acceptance_maze(31, 0);
  const lrrt::ClassGrid gt = lrrt::ground_truth_labels(maze, lrrt::default_block_px(31), 256);
  const double perfect = lrrt::direct_metric(gt, gt);
  const lrrt::ClassGrid all_free(gt.height, gt.width, gt.n_classes, lrrt::RegionClass::kFree);
  const double free_metric = lrrt::direct_metric(all_free, gt);
  const bool ok = worst <= 1e-9 && perfect == 0.0 && std::abs(free_metric - 1.0) <= 1e-12;
  return {ok, fmt("max |direct - (1-acc+red)| = %.3g over 1000 pairs; perfect %.3g; all-free %.6f", worst,
                  perfect, free_metric)};
}

// Focal loss --------------------------------------------------------------------

Outcome focal_loss_oracle() {
  lrrt::ScoreField uniform(1, 1, 3);
  lrrt::ClassGrid truth(1, 1);
  const double value = lrrt::focal_loss(uniform, truth, {}).mean;
  const double expected = 4.0 / 9.0 * std::log(3.0);
  bool ok = std::abs(value - expected) <= 1e-9;

  lrrt::SplitMix64 rng(4);
  int exact = 0;
  double naive_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int h = 1 + static_cast<int>(rng.below(16)), w = 1 + static_cast<int>(rng.below(16));
    lrrt::ScoreField scores(h, w, 3);
    for (auto& s : scores.scores) s = rng.uniform() * 12.0 - 6.0;
    lrrt::ClassGrid t(h, w);
    for (auto& v : t.labels) v = static_cast<std::uint8_t>(rng.below(3));
    const auto fl = lrrt::focal_loss(scores, t, {0.0, {1.0, 1.0, 1.0}});
    const auto ce = lrrt::cross_entropy(scores, t);
    exact += fl.per_pixel == ce.per_pixel && fl.mean == ce.mean;
    for (int p = 0; p < h * w; ++p)
      naive_gap = std::max(naive_gap, std::abs(ce.per_pixel[p] - lrrt::testing::naive_cross_entropy(
                                                                     &scores.scores[p * 3], 3, t.labels[p])));
  }
  ok = ok && exact == 100 && naive_gap < 1e-12;
  return {ok, fmt("uniform 3-class loss %.12f (expected %.12f); gamma=0 identical to CE on %d/100; "
                  "CE vs naive softmax max gap %.2g",
                  value, expected, exact, naive_gap)};
}

// Tree invariants -----------------------------------------------------------------

Outcome tree_invariants() {
  int runs = 0, solved = 0, iterations = 0;
  std::string failure;
  for (int i = 0; i < 10 && failure.empty(); ++i) {
    const int m = i < 5 ? 25 : 35;
    const lrrt::GridMaze maze = acceptance_maze(m, 100 + i);
    const int b = lrrt::default_block_px(m);
    const lrrt::WorkspaceMap map = lrrt::rasterize(maze, b, lrrt::kDefaultCanvasPx);
    const lrrt::SampleSupport support =
        lrrt::build_support(lrrt::classify(lrrt::oracle_region(maze, b, lrrt::kDefaultCanvasPx)), map);
    lrrt::PlannerConfig config;
    config.alpha = (i % 2 == 0) ? 0.8 : 0.5;
    config.rng_seed = 1000 + static_cast<std::uint64_t>(i);
    config.check_invariants = true;
    lrrt::PlanHooks hooks;
    // Independent cost recomputation on top of the planner's own checks.
    hooks.on_iteration = [&](const lrrt::Tree& tree, int) {
      if (!failure.empty()) return;
      const int last = tree.size() - 1;
      if (std::abs(lrrt::testing::cost_from_scratch(tree, last) - tree.node(last).cost) > 1e-9)
        failure = fmt("run %d: cost of node %d inconsistent", i, last);
    };
    const auto result = lrrt::plan(map, &support, config, hooks);
    ++runs;
    iterations += result.iterations_used;
    if (!result.success) continue;
    ++solved;
    for (std::size_t k = 1; k < result.path.size(); ++k)
      if (!lrrt::obstacle_free(map, result.path[k - 1], result.path[k], 0.1))
        failure = fmt("run %d: path segment %zu collides at 0.1 px", i, k);
  }
  return {failure.empty() && runs == 10,
          failure.empty() ? fmt("%d runs, %d solved, %d iterations checked", runs, solved, iterations) : failure};
}

// Dataset protocol ------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome dataset_protocol(const fs::path& work, const std::string& cli) {
  const fs::path a = work / "dataset_a", b = work / "dataset_b";
  for (const auto& dir : {a, b}) {
    if (!cli.empty()) {
      const std::string cmd = cli + " gen-dataset --complexities 31,33,35 --per-level 8000 "
                                    "--split 6000,1000,1000 --seed 17 --overwrite --out " + dir.string() +
                              " > " + (work / "gen.log").string() + " 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "gen-dataset failed: " + slurp(work / "gen.log")};
    } else {
      lrrt::DatasetOptions o;
      o.seed = 17;
      o.out_dir = dir;
      o.overwrite = true;
      lrrt::emit_dataset(o);
    }
  }
  const auto records = lrrt::read_manifest(a / lrrt::kManifestName);
  std::map<std::string, int> split;
  std::map<int, int> level;
  for (const auto& r : records) ++split[r.split], ++level[r.m];
  std::map<std::string, std::size_t> files;
  for (const auto& s : {"train", "eval", "test"})
    for (const auto& e : fs::directory_iterator(a / s)) files[s] += e.path().extension() == ".png";
  const bool counts = records.size() == 24000 && split["train"] == 18000 && split["eval"] == 3000 &&
                      split["test"] == 3000 && level[31] == 8000 && level[33] == 8000 && level[35] == 8000 &&
                      files["train"] == 36000 && files["eval"] == 6000 && files["test"] == 6000;
  const bool same = slurp(a / lrrt::kManifestName) == slurp(b / lrrt::kManifestName);
  // Spot-check that images are reproducible too.
  const bool same_images = slurp(a / records[123].map_path) == slurp(b / records[123].map_path) &&
                           slurp(a / records[23456].gt_path) == slurp(b / records[23456].gt_path);
  const auto detail = fmt("%zu samples (train %d, eval %d, test %d), png files %zu/%zu/%zu, manifests %s",
                          records.size(), split["train"], split["eval"], split["test"], files["train"],
                          files["eval"], files["test"], same && same_images ? "identical" : "DIFFER");
  fs::remove_all(a);
  fs::remove_all(b);
  return {counts && same && same_images, detail};
}

// Nearest neighbour and BFS oracles ---------------------------------------------------

Outcome search_oracles() {
  lrrt::SplitMix64 rng(8);
  lrrt::Tree tree({128.0, 128.0});
  std::vector<lrrt::Point> points{{128.0, 128.0}};
  lrrt::NearestIndex index(256.0, 256.0, 12.0);
  index.insert(0, points[0]);
  for (int i = 1; i < 3000; ++i) {
    // Half the nodes on a coarse lattice so exact ties occur.
    lrrt::Point p = (i % 2) ? lrrt::Point{rng.uniform() * 256.0, rng.uniform() * 256.0}
                            : lrrt::Point{4.0 * rng.below(64), 4.0 * rng.below(64)};
    points.push_back(p);
    index.insert(tree.add(p, static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))), p);
  }
  int agree = 0;
  for (int q = 0; q < 10000; ++q) {
    const lrrt::Point p = (q % 2) ? lrrt::Point{rng.uniform() * 256.0, rng.uniform() * 256.0}
                                  : lrrt::Point{2.0 * rng.below(128), 2.0 * rng.below(128)};
    const int g = index.nearest(tree, p);
    agree += g == lrrt::nearest(tree, p) && g == lrrt::testing::brute_nearest(points, p);
  }
  int bfs_agree = 0;
  for (int i = 0; i < 100; ++i) {
    const int m = 25 + 2 * (i % 11);
    const lrrt::GridMaze maze = acceptance_maze(m, 500 + i);
    const auto path = lrrt::shortest_block_path(maze);
    bfs_agree += static_cast<int>(path.size()) - 1 == lrrt::testing::dijkstra_distance(maze, maze.start, maze.goal);
  }
  return {agree == 10000 && bfs_agree == 100,
          fmt("grid nearest agrees on %d/10000 queries; BFS = Dijkstra on %d/100 mazes", agree, bfs_agree)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string work_dir = "acceptance_work", cli;
  int trials = 50, mazes = 20;
  app.add_option("--work-dir", work_dir);
  app.add_option("--cli", cli, "lrrt executable; the dataset check runs through it when given");
  app.add_option("--trials", trials, "Trials per environment (50 for the gate)");
  app.add_option("--mazes", mazes, "Mazes per complexity (20 for the gate)");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work_dir);

  report("alpha-mix frequency", alpha_mix);
  report("metric equivalence", metric_equivalence);
  report("focal loss oracle", focal_loss_oracle);
  report("tree invariants", tree_invariants);
  report("nearest-neighbour and BFS oracles", search_oracles);
  report("dataset protocol", [&] { return dataset_protocol(work_dir, cli); });
  report("oracle-guided comparison", [&] { return oracle_comparison(trials, mazes); });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
