#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lrrt/grid_world.hpp"
#include "lrrt/region.hpp"

namespace lrrt {

struct DatasetSplit {
  int train = 6000;
  int eval = 1000;
  int test = 1000;
  int total() const { return train + eval + test; }
};

struct DatasetOptions {
  std::vector<int> complexities{31, 33, 35};
  int per_level = 8000;
  DatasetSplit split;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int canvas_px = kDefaultCanvasPx;
  int dilation = 0;
  bool overwrite = false;
  /// Worker threads for sample rendering; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// One JSON-lines manifest entry. Paths are relative to the manifest's
/// directory.
struct ManifestRecord {
  std::string id;
  int m = 0;
  std::uint64_t seed = 0;
  std::string split;
  std::string map_path;
  std::string gt_path;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

inline constexpr const char* kManifestName = "manifest.jsonl";

/// Seed of sample `index` at complexity `m`:
///   combine_seed(combine_seed(base, m), index)
std::uint64_t sample_seed(std::uint64_t base, int m, int index);

/// Records the dataset would contain, in manifest order: complexities in
/// the given order, and within each level indices 0.. with the first
/// `train` in train, the next `eval` in eval, the rest in test.
std::vector<ManifestRecord> dataset_records(const DatasetOptions& options);

/// Renders every sample's map and ground-truth images into
/// out_dir/{train,eval,test}/ and writes out_dir/manifest.jsonl last.
/// Refuses a non-empty out_dir unless `overwrite` is set.
std::vector<ManifestRecord> emit_dataset(const DatasetOptions& options);

/// The maze a manifest record describes.
GridMaze record_maze(const ManifestRecord& record);

std::string to_json_line(const ManifestRecord& record);
ManifestRecord parse_json_line(const std::string& line);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);

/// Ground-truth labels decoded from a five-colour ground-truth image.
ClassGrid read_ground_truth(const std::filesystem::path& gt_image);

/// Class weights estimated from the ground-truth images of `records`.
/// Paths resolve against `root` (the manifest directory).
std::vector<double> class_weights(const std::vector<ManifestRecord>& records,
                                  const std::filesystem::path& root);

}  // namespace lrrt
