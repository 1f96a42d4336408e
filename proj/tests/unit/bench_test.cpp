#include "lrrt/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lrrt/errors.hpp"
#include "lrrt/oracle.hpp"

namespace lrrt {
namespace {

TrialStats row(const std::string& planner, const std::string& env, int trial, int iterations,
               int nodes = 10, bool success = true) {
  TrialStats r;
  r.planner = planner;
  r.env = env;
  r.trial = trial;
  r.iterations = iterations;
  r.node_count = nodes;
  r.success = success;
  r.path_length_px = success ? 42.0 : 0.0;
  r.wall_time_s = 0.001 * iterations;
  return r;
}

std::vector<BenchEnv> small_envs() {
  std::vector<BenchEnv> envs;
  for (int i = 0; i < 2; ++i) {
    const GridMaze maze = generate_maze(11, 100 + i);
    BenchEnv env;
    env.id = "m11_" + std::to_string(i);
    env.complexity = 11;
    env.map = rasterize(maze, 8, 96);
    env.support = build_support(classify(oracle_region(maze, 8, 96)), env.map);
    envs.push_back(std::move(env));
  }
  return envs;
}

TEST(PlannerSpec, Parses) {
  EXPECT_EQ(parse_planner_spec("rrt").alpha, 0.0);
  EXPECT_EQ(parse_planner_spec("lrrt:0.5").alpha, 0.5);
  EXPECT_EQ(parse_planner_spec("lrrt:0.8").label, "lrrt:0.8");
  EXPECT_THROW(parse_planner_spec("lrrt:0"), InvalidArgument);
  EXPECT_THROW(parse_planner_spec("lrrt:1.2"), InvalidArgument);
  EXPECT_THROW(parse_planner_spec("lrrt:x"), InvalidArgument);
  EXPECT_THROW(parse_planner_spec("prm"), InvalidArgument);
}

TEST(TrialSeed, DependsOnEveryComponent) {
  const auto s = trial_seed(1, "env", "rrt", 0);
  EXPECT_EQ(s, trial_seed(1, "env", "rrt", 0));
  EXPECT_NE(s, trial_seed(2, "env", "rrt", 0));
  EXPECT_NE(s, trial_seed(1, "env2", "rrt", 0));
  EXPECT_NE(s, trial_seed(1, "env", "lrrt:0.5", 0));
  EXPECT_NE(s, trial_seed(1, "env", "rrt", 1));
}

TEST(Summarize, IdenticalRowsHaveZeroSpread) {
  const std::vector<TrialStats> rows{row("rrt", "e", 0, 5), row("rrt", "e", 1, 5),
                                     row("rrt", "e", 2, 5)};
  const BenchSummary s = summarize(rows);
  ASSERT_EQ(s.groups.size(), 1u);
  EXPECT_EQ(s.groups[0].iterations.mean, 5.0);
  EXPECT_EQ(s.groups[0].iterations.stddev, 0.0);
  EXPECT_EQ(s.groups[0].success_rate, 1.0);
}

TEST(Summarize, SingleTrialReportsZeroStd) {
  const BenchSummary s = summarize({row("rrt", "e", 0, 17)});
  EXPECT_EQ(s.groups[0].iterations.stddev, 0.0);
  EXPECT_EQ(s.groups[0].trials, 1);
}

TEST(Summarize, SampleStandardDeviation) {
  const BenchSummary s = summarize({row("a", "e", 0, 2), row("a", "e", 1, 4), row("a", "e", 2, 9, 10, false)});
  const auto* g = s.find("a", "e");
  ASSERT_NE(g, nullptr);
  EXPECT_DOUBLE_EQ(g->iterations.mean, 5.0);
  EXPECT_DOUBLE_EQ(g->iterations.stddev, std::sqrt((9.0 + 1.0 + 16.0) / 2.0));
  EXPECT_EQ(g->successes, 2);
  EXPECT_DOUBLE_EQ(g->path_length_px.mean, 42.0);
}

TEST(Compare, MeanRatioAndSignTest) {
  const std::vector<TrialStats> rows{row("a", "e", 0, 2), row("a", "e", 1, 4),
                                     row("b", "e", 0, 1), row("b", "e", 1, 3)};
  const Comparison c = compare(rows, "a", "b", BenchMetric::kIterations);
  EXPECT_NEAR(c.ratio, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(c.pairs, 2);
  EXPECT_EQ(c.b_lower, 2);
  EXPECT_DOUBLE_EQ(c.p_value, 0.5);  // 2 * (1/4)
}

TEST(Compare, MismatchedTrialSetsAreRejected) {
  const std::vector<TrialStats> rows{row("a", "e", 0, 2), row("b", "e", 1, 1)};
  EXPECT_THROW(compare(rows, "a", "b", BenchMetric::kIterations), InvalidArgument);
}

TEST(SignTest, ExactBinomialTails) {
  EXPECT_DOUBLE_EQ(sign_test_p(0, 0), 1.0);
  EXPECT_NEAR(sign_test_p(10, 0), 2.0 / 1024.0, 1e-15);
  // 8 of 10: 2 * (1 + 10 + 45) / 1024
  EXPECT_NEAR(sign_test_p(8, 2), 112.0 / 1024.0, 1e-12);
  EXPECT_NEAR(sign_test_p(2, 8), 112.0 / 1024.0, 1e-12);
  EXPECT_DOUBLE_EQ(sign_test_p(5, 5), 1.0);
}

TEST(RunBenchmark, ProducesOneRowPerCombination) {
  const auto envs = small_envs();
  const std::vector<PlannerSpec> planners{parse_planner_spec("rrt"), parse_planner_spec("lrrt:0.5"),
                                          parse_planner_spec("lrrt:0.8")};
  BenchOptions options;
  options.trials = 3;
  options.base_seed = 11;
  options.config.max_iterations = 50000;
  int streamed = 0;
  options.on_row = [&](const TrialStats&) { ++streamed; };
  const BenchResult result = run_benchmark(envs, planners, options);
  ASSERT_EQ(result.rows.size(), 2u * 3 * 3);
  EXPECT_EQ(streamed, 18);
  EXPECT_EQ(result.summary.groups.size(), 6u);
  for (const auto& r : result.rows) {
    EXPECT_TRUE(r.error.empty());
    EXPECT_LE(r.iterations, 50000);
    if (r.success) EXPECT_GT(r.path_length_px, 0.0);
    EXPECT_EQ(r.seed, trial_seed(11, r.env, r.planner, r.trial));
  }
  EXPECT_EQ(result.rows.front().env, "m11_0");
  EXPECT_EQ(result.rows.front().planner, "rrt");
  EXPECT_EQ(result.rows.back().planner, "lrrt:0.8");
}

TEST(RunBenchmark, RerunIsDeterministicInCounts) {
  const auto envs = small_envs();
  const std::vector<PlannerSpec> planners{parse_planner_spec("rrt"), parse_planner_spec("lrrt:0.8")};
  BenchOptions options;
  options.trials = 4;
  options.base_seed = 3;
  options.threads = 3;
  const BenchResult a = run_benchmark(envs, planners, options);
  options.threads = 1;
  const BenchResult b = run_benchmark(envs, planners, options);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].iterations, b.rows[i].iterations);
    EXPECT_EQ(a.rows[i].node_count, b.rows[i].node_count);
    EXPECT_EQ(a.rows[i].path_length_px, b.rows[i].path_length_px);
  }
}

TEST(RunBenchmark, PlannerErrorsMarkRowsInsteadOfAborting) {
  auto envs = small_envs();
  envs[0].map.occupancy[static_cast<std::size_t>(envs[0].map.start.y) * envs[0].map.width +
                        envs[0].map.start.x] = 1;
  BenchOptions options;
  options.trials = 2;
  const BenchResult result = run_benchmark(envs, {parse_planner_spec("rrt")}, options);
  ASSERT_EQ(result.rows.size(), 4u);
  EXPECT_FALSE(result.rows[0].error.empty());
  EXPECT_FALSE(result.rows[0].success);
  EXPECT_TRUE(result.rows[2].error.empty());
}

TEST(RawCsv, SummaryRecomputesFromWrittenCsv) {
  const auto envs = small_envs();
  BenchOptions options;
  options.trials = 5;
  const BenchResult result =
      run_benchmark(envs, {parse_planner_spec("rrt"), parse_planner_spec("lrrt:0.8")}, options);
  std::stringstream csv;
  write_raw_csv(csv, result.rows);
  const auto parsed = read_raw_csv(csv);
  ASSERT_EQ(parsed.size(), result.rows.size());

  // Independent recomputation of the per-group iteration mean and std.
  for (const auto& g : result.summary.groups) {
    double sum = 0.0, sq = 0.0;
    int n = 0;
    for (const auto& r : parsed)
      if (r.planner == g.planner && r.env == g.env) sum += r.iterations, ++n;
    const double mean = sum / n;
    for (const auto& r : parsed)
      if (r.planner == g.planner && r.env == g.env) sq += (r.iterations - mean) * (r.iterations - mean);
    EXPECT_EQ(n, g.trials);
    EXPECT_NEAR(mean, g.iterations.mean, 1e-9);
    EXPECT_NEAR(n > 1 ? std::sqrt(sq / (n - 1)) : 0.0, g.iterations.stddev, 1e-9);
  }
  const BenchSummary again = summarize(parsed);
  for (std::size_t i = 0; i < again.groups.size(); ++i) {
    EXPECT_EQ(again.groups[i].nodes.mean, result.summary.groups[i].nodes.mean);
    EXPECT_NEAR(again.groups[i].path_length_px.mean, result.summary.groups[i].path_length_px.mean, 1e-9);
  }
}

TEST(RawCsv, RejectsWrongHeader) {
  std::stringstream csv("planner,env\nrrt,e\n");
  EXPECT_THROW(read_raw_csv(csv), FormatError);
}

}  // namespace
}  // namespace lrrt
