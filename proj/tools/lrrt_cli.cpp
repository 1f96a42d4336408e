#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrrt/lrrt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw lrrt::InvalidArgument("not an integer: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw lrrt::InvalidArgument("empty list");
  return out;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "m35_000012_map.png" -> 35; 0 when the name carries no complexity.
int complexity_from_name(const std::string& stem) {
  static const std::regex re(R"(^m(\d+)_)");
  std::smatch match;
  return std::regex_search(stem, match, re) ? std::stoi(match[1]) : 0;
}

std::string env_id_from_path(const fs::path& p) {
  std::string stem = p.stem().string();
  const std::string suffix = "_map";
  if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  return stem;
}

json result_json(const lrrt::PlanResult& r, const lrrt::PlannerConfig& c) {
  json points = json::array();
  for (const auto& p : r.path) points.push_back({p.x, p.y});
  return json{{"success", r.success},
          {"iterations_used", r.iterations_used},
          {"first_solution_iteration", r.first_solution_iteration},
          {"node_count", r.node_count},
          {"path_length", r.path_length},
          {"wall_time_s", r.wall_time_s},
          {"biased_samples", r.biased_samples},
          {"region_fallback", r.region_fallback},
          {"alpha", c.alpha},
          {"step_size", c.step_size},
          {"max_iterations", c.max_iterations},
          {"seed", c.rng_seed},
          {"path", points}};
}

void write_text(const fs::path& path, const std::string& text) {
  lrrt::write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int cmd_gen_dataset(const std::string& complexities, int per_level, const std::string& split,
                    std::uint64_t seed, const std::string& out, bool overwrite, int dilation,
                    unsigned threads) {
  lrrt::DatasetOptions o;
  o.complexities = parse_int_list(complexities);
  o.per_level = per_level;
  const auto parts = parse_int_list(split);
  if (parts.size() != 3) throw lrrt::InvalidArgument("--split needs train,eval,test");
  o.split = {parts[0], parts[1], parts[2]};
  o.seed = seed;
  o.out_dir = out;
  o.overwrite = overwrite;
  o.dilation = dilation;
  o.threads = threads;
  const auto records = lrrt::emit_dataset(o);
  std::map<std::string, int> per_split;
  for (const auto& r : records) ++per_split[r.split];
  std::cout << "wrote " << records.size() << " samples to " << out << " (train " << per_split["train"]
            << ", eval " << per_split["eval"] << ", test " << per_split["test"] << ")\n";
  return 0;
}

int cmd_gen_maze(int m, std::uint64_t seed, int canvas, const std::string& out) {
  const lrrt::GridMaze maze = lrrt::generate_maze(m, seed);
  lrrt::write_map_image(out, lrrt::rasterize(maze, lrrt::default_block_px(m, canvas), canvas));
  return 0;
}

int cmd_oracle(const std::string& map_path, const std::string& out, int dilation,
               const std::string& pmap_out) {
  const auto decoded = lrrt::read_map_image(map_path);
  const lrrt::ClassGrid labels = lrrt::ground_truth_labels(decoded.map, dilation);
  lrrt::write_map_image(out, decoded.map, &labels);
  if (!pmap_out.empty()) lrrt::save_pmap(lrrt::one_hot(labels), pmap_out);
  std::cout << "promising pixels: " << labels.count(lrrt::RegionClass::kPromising) << '\n';
  return 0;
}

int cmd_plan(const std::string& map_path, const std::string& pmap, bool use_oracle,
             lrrt::PlannerConfig config, const std::string& out) {
  const auto decoded = lrrt::read_map_image(map_path);
  std::optional<lrrt::SampleSupport> support;
  if (!pmap.empty())
    support = lrrt::build_support(lrrt::classify(lrrt::load_pmap(pmap)), decoded.map);
  else if (use_oracle)
    support = lrrt::build_support(lrrt::classify(lrrt::oracle_region(decoded.map)), decoded.map);
  const lrrt::PlanResult result =
      lrrt::plan(decoded.map, support ? &*support : nullptr, config);
  const lrrt::PlannerConfig resolved = lrrt::resolve_config(config, decoded.map);
  const std::string text = result_json(result, resolved).dump(2) + "\n";
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
  std::cerr << (result.success ? "success" : "failure") << " after " << result.iterations_used
            << " iterations, " << result.node_count << " nodes, length " << result.path_length << '\n';
  return result.success ? 0 : 3;
}

lrrt::EvalReport evaluate(const fs::path& pmap, const fs::path& gt) {
  const lrrt::ClassGrid predicted = lrrt::classify(lrrt::load_pmap(pmap));
  return lrrt::combined_metric(predicted, lrrt::read_ground_truth(gt));
}

int cmd_eval_pmap(const std::string& pmap, const std::string& gt) {
  const auto r = evaluate(pmap, gt);
  std::printf("accuracy %.6f\nredundancy %.6f\nmetric %.6f\n", r.accuracy, r.redundancy, r.metric);
  return 0;
}

int cmd_eval_batch(const std::string& manifest, const std::string& pmap_dir, const std::string& report,
                   const std::string& split) {
  const fs::path root = fs::path(manifest).parent_path();
  std::ostringstream out;
  out << "id,m,split,accuracy,redundancy,metric\n";
  struct Acc { double a = 0, r = 0, m = 0; int n = 0; };
  std::map<int, Acc> levels;
  int missing = 0;
  for (const auto& rec : lrrt::read_manifest(manifest)) {
    if (!split.empty() && rec.split != split) continue;
    const fs::path pmap = fs::path(pmap_dir) / (rec.id + ".pmap");
    if (!fs::exists(pmap)) {
      ++missing;
      continue;
    }
    const auto r = evaluate(pmap, root / rec.gt_path);
    char line[256];
    std::snprintf(line, sizeof line, "%s,%d,%s,%.6f,%.6f,%.6f\n", rec.id.c_str(), rec.m,
                  rec.split.c_str(), r.accuracy, r.redundancy, r.metric);
    out << line;
    Acc& acc = levels[rec.m];
    acc.a += r.accuracy, acc.r += r.redundancy, acc.m += r.metric, ++acc.n;
  }
  for (const auto& [m, acc] : levels) {
    char line[256];
    std::snprintf(line, sizeof line, "mean_m%d,%d,all,%.6f,%.6f,%.6f\n", m, m, acc.a / acc.n,
                  acc.r / acc.n, acc.m / acc.n);
    out << line;
    std::printf("m=%d n=%d accuracy %.4f redundancy %.4f metric %.4f\n", m, acc.n, acc.a / acc.n,
                acc.r / acc.n, acc.m / acc.n);
  }
  write_text(report, out.str());
  if (missing) std::fprintf(stderr, "%d samples had no pmap in %s\n", missing, pmap_dir.c_str());
  return 0;
}

int cmd_bench(const std::string& envs_dir, const std::string& planners_text, int trials,
              const lrrt::PlannerConfig& config, std::uint64_t seed, const std::string& out_dir,
              const std::string& region, unsigned threads) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(envs_dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".png") continue;
    if (e.path().stem().string().ends_with("_gt")) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw lrrt::InvalidArgument("no map images under " + envs_dir);

  std::vector<lrrt::BenchEnv> envs;
  for (const auto& f : files) {
    lrrt::BenchEnv env;
    env.id = env_id_from_path(f);
    env.complexity = complexity_from_name(env.id);
    env.map = lrrt::read_map_image(f).map;
    if (env.complexity == 0) env.complexity = lrrt::lift_to_blocks(env.map).maze.m();
    if (region == "oracle") {
      env.support = lrrt::build_support(lrrt::classify(lrrt::oracle_region(env.map)), env.map);
    } else if (!region.empty()) {
      const fs::path pmap = fs::path(region) / (env.id + ".pmap");
      if (fs::exists(pmap))
        env.support = lrrt::build_support(lrrt::classify(lrrt::load_pmap(pmap)), env.map);
      else
        std::cerr << "warning: no region for " << env.id << ", biased planners fall back\n";
    }
    envs.push_back(std::move(env));
  }

  std::vector<lrrt::PlannerSpec> planners;
  for (const auto& p : split_csv(planners_text)) planners.push_back(lrrt::parse_planner_spec(p));

  fs::create_directories(out_dir);
  const fs::path partial = fs::path(out_dir) / "raw.csv.partial";
  std::ofstream stream(partial);
  stream << lrrt::kRawCsvHeader << '\n';
  std::mutex mu;
  std::size_t done = 0;
  const std::size_t total = envs.size() * planners.size() * static_cast<std::size_t>(trials);

  lrrt::BenchOptions options;
  options.trials = trials;
  options.base_seed = seed;
  options.config = config;
  options.threads = threads;
  options.on_row = [&](const lrrt::TrialStats& row) {
    std::lock_guard lock(mu);
    lrrt::write_raw_row(stream, row);
    stream.flush();
    if (++done % 50 == 0 || done == total) std::cerr << "\r" << done << "/" << total << std::flush;
  };
  const lrrt::BenchResult result = lrrt::run_benchmark(envs, planners, options);
  std::cerr << '\n';
  stream.close();

  std::ostringstream raw, summary;
  lrrt::write_raw_csv(raw, result.rows);
  write_text(fs::path(out_dir) / "raw.csv", raw.str());
  fs::remove(partial);
  lrrt::write_summary_csv(summary, result.summary);
  write_text(fs::path(out_dir) / "summary.csv", summary.str());

  if (planners.size() > 1 && planners[0].alpha == 0.0) {
    for (std::size_t i = 1; i < planners.size(); ++i) {
      const auto c = lrrt::compare(result.rows, planners[0].label, planners[i].label,
                                   lrrt::BenchMetric::kIterations);
      std::printf("%s vs %s: iterations ratio %.3f, sign test p=%.3g (%d/%d lower)\n",
                  planners[i].label.c_str(), planners[0].label.c_str(), c.ratio, c.p_value,
                  c.b_lower, c.pairs - c.ties);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-guided RRT* toolkit"};
  app.require_subcommand(1);

  std::string complexities = "31,33,35", split = "6000,1000,1000", out, map_path, pmap, gt;
  int per_level = 8000, dilation = 0, m = 31, canvas = lrrt::kDefaultCanvasPx, trials = 50;
  std::uint64_t seed = 0;
  bool overwrite = false, use_oracle = false;
  unsigned threads = 0;
  lrrt::PlannerConfig config;

  auto* gen = app.add_subcommand("gen-dataset", "Render a maze dataset with ground truth and manifest");
  gen->add_option("--complexities", complexities, "Comma-separated odd maze sizes")->capture_default_str();
  gen->add_option("--per-level", per_level)->capture_default_str();
  gen->add_option("--split", split, "train,eval,test counts per level")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out)->required();
  gen->add_option("--dilation", dilation)->capture_default_str();
  gen->add_option("--threads", threads, "0 = all cores");
  gen->add_flag("--overwrite", overwrite);

  auto* maze = app.add_subcommand("gen-maze", "Render one maze to a map image");
  maze->add_option("--m", m)->capture_default_str();
  maze->add_option("--seed", seed)->capture_default_str();
  maze->add_option("--canvas", canvas)->capture_default_str();
  maze->add_option("--out", out)->required();

  auto* oracle = app.add_subcommand("oracle", "Write the ground-truth image of a map");
  oracle->add_option("--map", map_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", out)->required();
  oracle->add_option("--dilation", dilation)->capture_default_str();
  std::string pmap_out;
  oracle->add_option("--pmap-out", pmap_out, "Also write the labels as a one-hot PMAP");

  auto* plan = app.add_subcommand("plan", "Run one planner query");
  plan->add_option("--map", map_path)->required()->check(CLI::ExistingFile);
  auto* pmap_opt = plan->add_option("--pmap", pmap, "Region probabilities")->check(CLI::ExistingFile);
  plan->add_flag("--oracle", use_oracle, "Use the ground-truth region")->excludes(pmap_opt);
  plan->add_option("--alpha", config.alpha)->capture_default_str();
  plan->add_option("--step", config.step_size)->capture_default_str();
  plan->add_option("--max-iter", config.max_iterations)->capture_default_str();
  plan->add_option("--seed", config.rng_seed)->capture_default_str();
  plan->add_flag("--optimize", config.optimize, "Keep refining until --max-iter");
  plan->add_option("--out", out, "Result JSON ('-' for stdout)");

  auto* eval = app.add_subcommand("eval-pmap", "Score a region file against ground truth");
  eval->add_option("--pmap", pmap)->required()->check(CLI::ExistingFile);
  eval->add_option("--gt", gt)->required()->check(CLI::ExistingFile);

  std::string manifest, pmap_dir, report, only_split;
  auto* batch = app.add_subcommand("eval-batch", "Score a directory of region files");
  batch->add_option("--manifest", manifest)->required()->check(CLI::ExistingFile);
  batch->add_option("--pmap-dir", pmap_dir, "Holds <id>.pmap")->required()->check(CLI::ExistingDirectory);
  batch->add_option("--report", report)->required();
  batch->add_option("--split", only_split, "Only this split");

  std::string envs, planners = "rrt,lrrt:0.5,lrrt:0.8", region;
  auto* bench = app.add_subcommand("bench", "Repeated-trial planner comparison");
  bench->add_option("--envs", envs, "Directory of map images")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--planners", planners)->capture_default_str();
  bench->add_option("--trials", trials)->capture_default_str();
  bench->add_option("--max-iter", config.max_iterations)->capture_default_str();
  bench->add_option("--step", config.step_size)->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_option("--out-dir", out)->required();
  bench->add_option("--region", region, "'oracle' or a directory of <env>.pmap files");
  bench->add_option("--threads", threads, "0 = all cores");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen_dataset(complexities, per_level, split, seed, out, overwrite, dilation, threads);
    if (*maze) return cmd_gen_maze(m, seed, canvas, out);
    if (*oracle) return cmd_oracle(map_path, out, dilation, pmap_out);
    if (*plan) return cmd_plan(map_path, pmap, use_oracle, config, out);
    if (*eval) return cmd_eval_pmap(pmap, gt);
    if (*batch) return cmd_eval_batch(manifest, pmap_dir, report, only_split);
    if (*bench) return cmd_bench(envs, planners, trials, config, seed, out, region, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
