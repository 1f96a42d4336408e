#include "lrrt/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "lrrt/errors.hpp"
#include "lrrt/map_image.hpp"
#include "lrrt/metrics.hpp"
#include "lrrt/oracle.hpp"
#include "lrrt/rng.hpp"

namespace lrrt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSplits[3] = {"train", "eval", "test"};

std::string sample_id(int m, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "m%02d_%06d", m, index);
  return buf;
}

void validate(const DatasetOptions& o) {
  if (o.complexities.empty()) throw InvalidArgument("dataset: no complexities given");
  for (int m : o.complexities)
    if (m % 2 == 0 || m < kMinMazeSize || m > kMaxMazeSize)
      throw InvalidArgument("dataset: complexity " + std::to_string(m) + " is not an odd size in [5, 99]");
  if (o.per_level < 1) throw InvalidArgument("dataset: per_level must be >= 1");
  if (o.split.train < 0 || o.split.eval < 0 || o.split.test < 0 ||
      o.split.total() != o.per_level)
    throw InvalidArgument("dataset: split must sum to per_level");
}

void render_sample(const ManifestRecord& r, const fs::path& root, int canvas_px, int dilation) {
  const GridMaze maze = record_maze(r);
  const int block_px = default_block_px(maze.m(), canvas_px);
  const WorkspaceMap map = rasterize(maze, block_px, canvas_px);
  const ClassGrid labels = ground_truth_labels(maze, block_px, canvas_px, dilation);
  write_map_image(root / r.map_path, map);
  write_map_image(root / r.gt_path, map, &labels);
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t base, int m, int index) {
  return combine_seed(combine_seed(base, static_cast<std::uint64_t>(m)),
                      static_cast<std::uint64_t>(index));
}

std::vector<ManifestRecord> dataset_records(const DatasetOptions& options) {
  validate(options);
  std::vector<ManifestRecord> records;
  records.reserve(options.complexities.size() * static_cast<std::size_t>(options.per_level));
  for (int m : options.complexities) {
    for (int i = 0; i < options.per_level; ++i) {
      const int which = i < options.split.train ? 0
                        : i < options.split.train + options.split.eval ? 1
                                                                       : 2;
      ManifestRecord r;
      r.id = sample_id(m, i);
      r.m = m;
      r.seed = sample_seed(options.seed, m, i);
      r.split = kSplits[which];
      r.map_path = r.split + "/" + r.id + "_map.png";
      r.gt_path = r.split + "/" + r.id + "_gt.png";
      records.push_back(std::move(r));
    }
  }
  return records;
}

GridMaze record_maze(const ManifestRecord& record) {
  return generate_maze(record.m, record.seed);
}

std::vector<ManifestRecord> emit_dataset(const DatasetOptions& options) {
  auto records = dataset_records(options);
  const fs::path& root = options.out_dir;
  if (root.empty()) throw InvalidArgument("dataset: output directory not set");

  std::error_code ec;
  if (fs::exists(root) && !fs::is_empty(root)) {
    if (!options.overwrite)
      throw IoError("output directory " + root.string() +
                    " already exists and is not empty (pass overwrite to replace)");
    for (const char* split : kSplits) fs::remove_all(root / split);
    fs::remove(root / kManifestName);
  }
  for (const char* split : kSplits) {
    fs::create_directories(root / split, ec);
    if (ec) throw IoError("cannot create " + (root / split).string() + ": " + ec.message());
  }

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      try {
        render_sample(records[i], root, options.canvas_px, options.dilation);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = records.size();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  write_manifest(root / kManifestName, records);
  return records;
}

std::string to_json_line(const ManifestRecord& r) {
  // Key order is fixed so manifests are byte-comparable.
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["m"] = r.m;
  j["seed"] = r.seed;
  j["split"] = r.split;
  j["map_path"] = r.map_path;
  j["gt_path"] = r.gt_path;
  return j.dump();
}

ManifestRecord parse_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ManifestRecord r;
    r.id = j.at("id").get<std::string>();
    r.m = j.at("m").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.split = j.at("split").get<std::string>();
    r.map_path = j.at("map_path").get<std::string>();
    r.gt_path = j.at("gt_path").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

void write_manifest(const fs::path& path, const std::vector<ManifestRecord>& records) {
  std::string text;
  for (const auto& r : records) {
    text += to_json_line(r);
    text += '\n';
  }
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<ManifestRecord> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::vector<ManifestRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(parse_json_line(line));
  }
  return records;
}

ClassGrid read_ground_truth(const fs::path& gt_image) {
  return read_map_image(gt_image).labels;
}

std::vector<double> class_weights(const std::vector<ManifestRecord>& records, const fs::path& root) {
  if (records.empty()) throw InvalidArgument("class_weights: manifest is empty");
  std::vector<std::uint64_t> totals(kDefaultClassCount, 0);
  for (const auto& r : records) {
    const auto counts = class_counts(read_ground_truth(root / r.gt_path));
    for (std::size_t k = 0; k < totals.size(); ++k) totals[k] += counts[k];
  }
  return class_weights(totals);
}

}  // namespace lrrt
