#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrrt/grid_world.hpp"
#include "lrrt/planner.hpp"
#include "lrrt/region.hpp"

namespace lrrt {

struct PlannerSpec {
  std::string label;
  double alpha = 0.0;
};

/// Parses "rrt" (alpha 0) or "lrrt:<alpha>"; the label is the input text.
PlannerSpec parse_planner_spec(const std::string& text);

struct BenchEnv {
  std::string id;
  int complexity = 0;
  WorkspaceMap map;
  std::optional<SampleSupport> support;  ///< empty -> biased planners fall back
};

/// One planning run. Column order of raw.csv follows the field order.
struct TrialStats {
  std::string planner;
  std::string env;
  int complexity = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  int iterations = 0;
  int node_count = 0;
  double wall_time_s = 0.0;
  double path_length_px = 0.0;
  bool region_fallback = false;
  std::string error;  ///< non-empty when the planner rejected its inputs
};

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation; 0 for one sample
};

struct GroupSummary {
  std::string planner;
  std::string env;
  int complexity = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  Stat iterations;
  Stat nodes;
  Stat wall_time_s;
  Stat path_length_px;  ///< over successful trials only
};

struct BenchSummary {
  std::vector<GroupSummary> groups;
  const GroupSummary* find(const std::string& planner, const std::string& env) const;
};

struct BenchOptions {
  int trials = 50;
  std::uint64_t base_seed = 0;
  PlannerConfig config;  ///< alpha and rng_seed are overridden per trial
  unsigned threads = 0;  ///< 0 -> hardware concurrency
  /// Called (serialised) as each trial finishes, in completion order.
  std::function<void(const TrialStats&)> on_row;
};

struct BenchResult {
  std::vector<TrialStats> rows;  ///< sorted by env, planner, trial (input order)
  BenchSummary summary;
};

/// combine_seed(combine_seed(combine_seed(base, fnv1a64(env)), fnv1a64(label)), trial)
std::uint64_t trial_seed(std::uint64_t base, const std::string& env, const std::string& label,
                         int trial);

BenchResult run_benchmark(const std::vector<BenchEnv>& envs,
                          const std::vector<PlannerSpec>& planners, const BenchOptions& options);

Stat mean_std(const std::vector<double>& values);

/// Groups by (planner, env) in first-appearance order.
BenchSummary summarize(const std::vector<TrialStats>& rows);

enum class BenchMetric { kIterations, kNodes, kWallTime, kPathLength };
double metric_value(const TrialStats& row, BenchMetric metric);

struct Comparison {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double ratio = 0.0;  ///< mean_b / mean_a
  int pairs = 0;
  int b_lower = 0;
  int a_lower = 0;
  int ties = 0;
  double p_value = 1.0;  ///< two-sided exact sign test over untied pairs
};

/// Pairs rows of planners `a` and `b` by (env, trial) among rows passing
/// `filter`. Throws InvalidArgument if the two trial sets differ.
Comparison compare(const std::vector<TrialStats>& rows, const std::string& a,
                   const std::string& b, BenchMetric metric,
                   const std::function<bool(const TrialStats&)>& filter = {});

/// Two-sided exact binomial sign test: P(min count <= observed | p = 1/2).
double sign_test_p(int successes, int failures);

void write_raw_csv(std::ostream& out, const std::vector<TrialStats>& rows);
void write_raw_row(std::ostream& out, const TrialStats& row);
std::vector<TrialStats> read_raw_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const BenchSummary& summary);

extern const char* const kRawCsvHeader;
extern const char* const kSummaryCsvHeader;

}  // namespace lrrt
