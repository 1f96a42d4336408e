#include "lrrt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "lrrt/errors.hpp"
#include "lrrt/rng.hpp"

namespace lrrt {

const char* const kRawCsvHeader =
    "planner,env,m,trial,seed,success,iterations,nodes,wall_time_s,path_length_px,"
    "region_fallback,error";
const char* const kSummaryCsvHeader =
    "planner,env,m,trials,successes,success_rate,iterations_mean,iterations_std,nodes_mean,"
    "nodes_std,wall_time_mean_s,wall_time_std_s,path_length_mean_px,path_length_std_px";

PlannerSpec parse_planner_spec(const std::string& text) {
  if (text == "rrt") return {text, 0.0};
  if (text.rfind("lrrt:", 0) == 0) {
    const std::string value = text.substr(5);
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || !(alpha > 0.0 && alpha <= 1.0))
      throw InvalidArgument("planner spec '" + text + "': alpha must be in (0, 1]");
    return {text, alpha};
  }
  throw InvalidArgument("planner spec '" + text + "': expected rrt or lrrt:<alpha>");
}

const GroupSummary* BenchSummary::find(const std::string& planner, const std::string& env) const {
  for (const auto& g : groups)
    if (g.planner == planner && g.env == env) return &g;
  return nullptr;
}

std::uint64_t trial_seed(std::uint64_t base, const std::string& env, const std::string& label,
                         int trial) {
  std::uint64_t s = combine_seed(base, fnv1a64(env));
  s = combine_seed(s, fnv1a64(label));
  return combine_seed(s, static_cast<std::uint64_t>(trial));
}

BenchResult run_benchmark(const std::vector<BenchEnv>& envs,
                          const std::vector<PlannerSpec>& planners, const BenchOptions& options) {
  if (options.trials < 1) throw InvalidArgument("run_benchmark: trials must be >= 1");
  struct Job {
    std::size_t env, planner;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < envs.size(); ++e)
    for (std::size_t p = 0; p < planners.size(); ++p)
      for (int t = 0; t < options.trials; ++t) jobs.push_back({e, p, t});

  std::vector<TrialStats> rows(jobs.size());
  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const BenchEnv& env = envs[job.env];
      const PlannerSpec& spec = planners[job.planner];
      TrialStats row;
      row.planner = spec.label;
      row.env = env.id;
      row.complexity = env.complexity;
      row.trial = job.trial;
      row.seed = trial_seed(options.base_seed, env.id, spec.label, job.trial);
      PlannerConfig config = options.config;
      config.alpha = spec.alpha;
      config.rng_seed = row.seed;
      try {
        const PlanResult r =
            plan(env.map, env.support ? &*env.support : nullptr, config);
        row.success = r.success;
        row.iterations = r.iterations_used;
        row.node_count = r.node_count;
        row.wall_time_s = r.wall_time_s;
        row.path_length_px = r.path_length;
        row.region_fallback = r.region_fallback;
      } catch (const std::exception& ex) {
        row.error = ex.what();
      }
      rows[i] = row;
      if (options.on_row) {
        std::lock_guard lock(sink_mutex);
        options.on_row(rows[i]);
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Jobs were laid out in (env, planner, trial) order, so `rows` is sorted.
  BenchResult result;
  result.summary = summarize(rows);
  result.rows = std::move(rows);
  return result;
}

Stat mean_std(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

BenchSummary summarize(const std::vector<TrialStats>& rows) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const TrialStats*>> groups;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.planner, r.env);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  BenchSummary summary;
  for (const auto& key : order) {
    const auto& members = groups[key];
    GroupSummary g;
    g.planner = key.first;
    g.env = key.second;
    g.complexity = members.front()->complexity;
    g.trials = static_cast<int>(members.size());
    std::vector<double> its, nodes, times, lengths;
    for (const TrialStats* r : members) {
      its.push_back(r->iterations);
      nodes.push_back(r->node_count);
      times.push_back(r->wall_time_s);
      if (r->success) {
        ++g.successes;
        lengths.push_back(r->path_length_px);
      }
    }
    g.success_rate = static_cast<double>(g.successes) / g.trials;
    g.iterations = mean_std(its);
    g.nodes = mean_std(nodes);
    g.wall_time_s = mean_std(times);
    g.path_length_px = mean_std(lengths);
    summary.groups.push_back(g);
  }
  return summary;
}

double metric_value(const TrialStats& row, BenchMetric metric) {
  switch (metric) {
    case BenchMetric::kIterations: return row.iterations;
    case BenchMetric::kNodes: return row.node_count;
    case BenchMetric::kWallTime: return row.wall_time_s;
    case BenchMetric::kPathLength: return row.path_length_px;
  }
  return 0.0;
}

double sign_test_p(int successes, int failures) {
  const int n = successes + failures;
  if (n == 0) return 1.0;
  const int k = std::min(successes, failures);
  // Sum of C(n, i) / 2^n for i <= k in log space.
  double tail = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                            std::lgamma(n - i + 1.0) - n * std::log(2.0);
    tail += std::exp(log_term);
  }
  return std::min(1.0, 2.0 * tail);
}

Comparison compare(const std::vector<TrialStats>& rows, const std::string& a,
                   const std::string& b, BenchMetric metric,
                   const std::function<bool(const TrialStats&)>& filter) {
  std::map<std::pair<std::string, int>, const TrialStats*> side_a, side_b;
  for (const auto& r : rows) {
    if (filter && !filter(r)) continue;
    if (r.planner == a) side_a[{r.env, r.trial}] = &r;
    else if (r.planner == b) side_b[{r.env, r.trial}] = &r;
  }
  if (side_a.empty()) throw InvalidArgument("compare: no rows for planner " + a);
  if (side_a.size() != side_b.size() ||
      !std::equal(side_a.begin(), side_a.end(), side_b.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; }))
    throw InvalidArgument("compare: planners " + a + " and " + b +
                          " were not run on matching trial sets");
  Comparison c;
  double sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, ra] : side_a) {
    const double va = metric_value(*ra, metric);
    const double vb = metric_value(*side_b.at(key), metric);
    sum_a += va;
    sum_b += vb;
    ++c.pairs;
    if (vb < va) ++c.b_lower;
    else if (va < vb) ++c.a_lower;
    else ++c.ties;
  }
  c.mean_a = sum_a / c.pairs;
  c.mean_b = sum_b / c.pairs;
  c.ratio = c.mean_b / c.mean_a;
  c.p_value = sign_test_p(c.b_lower, c.a_lower);
  return c;
}

void write_raw_row(std::ostream& out, const TrialStats& r) {
  std::string error = r.error;
  std::replace(error.begin(), error.end(), ',', ';');
  std::replace(error.begin(), error.end(), '\n', ' ');
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d,%d,%llu,%d,%d,%d,%.9g,%.17g,%d,", r.complexity, r.trial,
                static_cast<unsigned long long>(r.seed), r.success ? 1 : 0, r.iterations,
                r.node_count, r.wall_time_s, r.path_length_px, r.region_fallback ? 1 : 0);
  out << r.planner << ',' << r.env << ',' << buf << error << '\n';
}

void write_raw_csv(std::ostream& out, const std::vector<TrialStats>& rows) {
  out << kRawCsvHeader << '\n';
  for (const auto& r : rows) write_raw_row(out, r);
}

std::vector<TrialStats> read_raw_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRawCsvHeader)
    throw FormatError("raw csv: missing or unexpected header");
  std::vector<TrialStats> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 11) f.emplace_back();
    if (f.size() != 12) throw FormatError("raw csv: expected 12 fields in '" + line + "'");
    TrialStats r;
    try {
      r.planner = f[0];
      r.env = f[1];
      r.complexity = std::stoi(f[2]);
      r.trial = std::stoi(f[3]);
      r.seed = std::stoull(f[4]);
      r.success = f[5] == "1";
      r.iterations = std::stoi(f[6]);
      r.node_count = std::stoi(f[7]);
      r.wall_time_s = std::stod(f[8]);
      r.path_length_px = std::stod(f[9]);
      r.region_fallback = f[10] == "1";
      r.error = f[11];
    } catch (const std::exception&) {
      throw FormatError("raw csv: malformed row '" + line + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const BenchSummary& summary) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& g : summary.groups) {
    char buf[400];
    std::snprintf(buf, sizeof buf,
                  "%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.9g,%.9g,%.6f,%.6f", g.complexity,
                  g.trials, g.successes, g.success_rate, g.iterations.mean, g.iterations.stddev,
                  g.nodes.mean, g.nodes.stddev, g.wall_time_s.mean, g.wall_time_s.stddev,
                  g.path_length_px.mean, g.path_length_px.stddev);
    out << g.planner << ',' << g.env << ',' << buf << '\n';
  }
}

}  // namespace lrrt
