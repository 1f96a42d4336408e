#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lrrt/geometry.hpp"
#include "lrrt/rng.hpp"

namespace lrrt {

struct WorkspaceMap;

/// Fixed class order shared by every component.
enum class RegionClass : std::uint8_t { kFree = 0, kPromising = 1, kObstacle = 2 };

inline constexpr int kDefaultClassCount = 3;
inline constexpr double kNormalizationTolerance = 1e-5;

/// Per-pixel class-probability field, row-major with class fastest.
struct RegionMap {
  int height = 0;
  int width = 0;
  int n_classes = kDefaultClassCount;
  std::vector<float> probs;

  RegionMap() = default;
  RegionMap(int height, int width, int n_classes);

  float& at(int y, int x, int k) { return probs[offset(y, x, k)]; }
  float at(int y, int x, int k) const { return probs[offset(y, x, k)]; }
  std::span<const float> pixel(int y, int x) const {
    return {probs.data() + offset(y, x, 0), static_cast<std::size_t>(n_classes)};
  }

  friend bool operator==(const RegionMap&, const RegionMap&) = default;

 private:
  std::size_t offset(int y, int x, int k) const {
    return (static_cast<std::size_t>(y) * width + x) * n_classes + k;
  }
};

/// Per-pixel hard labels (class indices).
struct ClassGrid {
  int height = 0;
  int width = 0;
  int n_classes = kDefaultClassCount;
  std::vector<std::uint8_t> labels;

  ClassGrid() = default;
  ClassGrid(int height, int width, int n_classes = kDefaultClassCount,
            RegionClass fill = RegionClass::kFree);

  std::uint8_t at(int y, int x) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  void set(int y, int x, RegionClass c) {
    labels[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(c);
  }
  bool is(int y, int x, RegionClass c) const { return at(y, x) == static_cast<std::uint8_t>(c); }
  std::size_t count(RegionClass c) const;

  friend bool operator==(const ClassGrid&, const ClassGrid&) = default;
};

/// Pixels eligible for biased sampling.
class SampleSupport {
 public:
  SampleSupport() = default;
  explicit SampleSupport(std::vector<Pixel> pixels);

  bool empty() const { return pixels_.empty(); }
  std::size_t size() const { return pixels_.size(); }
  std::span<const Pixel> pixels() const { return pixels_; }

 private:
  std::vector<Pixel> pixels_;
};

/// Throws FormatError when any pixel's class sum leaves [1-1e-5, 1+1e-5]
/// or an entry leaves [0, 1].
void validate_region(const RegionMap& region);

/// PMAP binary format, little-endian:
///   "PMAP" | u32 version=1 | u32 height | u32 width | u32 n_classes |
///   height*width*n_classes f32, row-major, class fastest.
std::vector<std::uint8_t> encode_pmap(const RegionMap& region);
RegionMap decode_pmap(std::span<const std::uint8_t> bytes);
void save_pmap(const RegionMap& region, const std::filesystem::path& path);
RegionMap load_pmap(const std::filesystem::path& path);

/// Argmax per pixel; ties go to the lowest class index.
ClassGrid classify(const RegionMap& region);

/// One-hot RegionMap of a label grid.
RegionMap one_hot(const ClassGrid& labels);

/// Pixels labelled promising that are free in `map`. Throws
/// EmptySupportError when none qualify.
SampleSupport build_support(const ClassGrid& labels, const WorkspaceMap& map);

/// Uniform pixel from the support with uniform jitter inside it.
Point sample_biased(const SampleSupport& support, SplitMix64& rng);

}  // namespace lrrt
