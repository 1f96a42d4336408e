#include "lrrt/region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "lrrt/errors.hpp"
#include "lrrt/grid_world.hpp"
#include "lrrt/map_image.hpp"

namespace lrrt {

namespace {

constexpr char kPmapMagic[4] = {'P', 'M', 'A', 'P'};
constexpr std::uint32_t kPmapVersion = 1;
constexpr std::size_t kPmapHeaderBytes = 20;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

}  // namespace

RegionMap::RegionMap(int h, int w, int k)
    : height(h), width(w), n_classes(k),
      probs(static_cast<std::size_t>(h) * w * k, 0.0f) {}

ClassGrid::ClassGrid(int h, int w, int k, RegionClass fill)
    : height(h), width(w), n_classes(k),
      labels(static_cast<std::size_t>(h) * w, static_cast<std::uint8_t>(fill)) {}

std::size_t ClassGrid::count(RegionClass c) const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), static_cast<std::uint8_t>(c)));
}

SampleSupport::SampleSupport(std::vector<Pixel> pixels) : pixels_(std::move(pixels)) {}

void validate_region(const RegionMap& region) {
  if (region.height <= 0 || region.width <= 0 || region.n_classes <= 0)
    throw FormatError("region map has non-positive dimensions");
  if (region.probs.size() !=
      static_cast<std::size_t>(region.height) * region.width * region.n_classes)
    throw FormatError("region map payload size does not match its dimensions");
  for (int y = 0; y < region.height; ++y) {
    for (int x = 0; x < region.width; ++x) {
      double sum = 0.0;
      for (float p : region.pixel(y, x)) {
        if (!(p >= 0.0f && p <= 1.0f))
          throw FormatError("region map entry outside [0, 1] at pixel (" +
                            std::to_string(x) + ", " + std::to_string(y) + ")");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kNormalizationTolerance)
        throw FormatError("normalization violation at pixel (" + std::to_string(x) + ", " +
                          std::to_string(y) + "): class sum " + std::to_string(sum));
    }
  }
}

std::vector<std::uint8_t> encode_pmap(const RegionMap& region) {
  validate_region(region);
  std::vector<std::uint8_t> out;
  out.reserve(kPmapHeaderBytes + region.probs.size() * 4);
  out.insert(out.end(), std::begin(kPmapMagic), std::end(kPmapMagic));
  put_u32(out, kPmapVersion);
  put_u32(out, static_cast<std::uint32_t>(region.height));
  put_u32(out, static_cast<std::uint32_t>(region.width));
  put_u32(out, static_cast<std::uint32_t>(region.n_classes));
  for (float p : region.probs) put_u32(out, std::bit_cast<std::uint32_t>(p));
  return out;
}

RegionMap decode_pmap(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPmapHeaderBytes) throw FormatError("pmap: truncated header");
  if (std::memcmp(bytes.data(), kPmapMagic, 4) != 0) throw FormatError("pmap: bad magic");
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kPmapVersion)
    throw FormatError("pmap: unsupported version " + std::to_string(version));
  const std::uint32_t h = get_u32(bytes, 8);
  const std::uint32_t w = get_u32(bytes, 12);
  const std::uint32_t k = get_u32(bytes, 16);
  if (h == 0 || w == 0 || k == 0 || h > (1u << 15) || w > (1u << 15) || k > 255)
    throw FormatError("pmap: implausible dimensions");
  const std::size_t count = static_cast<std::size_t>(h) * w * k;
  if (bytes.size() < kPmapHeaderBytes + count * 4) throw FormatError("pmap: truncated payload");
  if (bytes.size() > kPmapHeaderBytes + count * 4) throw FormatError("pmap: trailing bytes");
  RegionMap region(static_cast<int>(h), static_cast<int>(w), static_cast<int>(k));
  for (std::size_t i = 0; i < count; ++i)
    region.probs[i] = std::bit_cast<float>(get_u32(bytes, kPmapHeaderBytes + 4 * i));
  validate_region(region);
  return region;
}

void save_pmap(const RegionMap& region, const std::filesystem::path& path) {
  write_file_bytes(path, encode_pmap(region));
}

RegionMap load_pmap(const std::filesystem::path& path) {
  return decode_pmap(read_file_bytes(path));
}

ClassGrid classify(const RegionMap& region) {
  ClassGrid grid(region.height, region.width, region.n_classes);
  for (int y = 0; y < region.height; ++y) {
    for (int x = 0; x < region.width; ++x) {
      const auto p = region.pixel(y, x);
      // max_element returns the first maximum, i.e. the lowest index.
      const auto best = std::max_element(p.begin(), p.end()) - p.begin();
      grid.labels[static_cast<std::size_t>(y) * region.width + x] =
          static_cast<std::uint8_t>(best);
    }
  }
  return grid;
}

RegionMap one_hot(const ClassGrid& labels) {
  RegionMap region(labels.height, labels.width, labels.n_classes);
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) region.at(y, x, labels.at(y, x)) = 1.0f;
  return region;
}

SampleSupport build_support(const ClassGrid& labels, const WorkspaceMap& map) {
  if (labels.height != map.height || labels.width != map.width)
    throw InvalidArgument("build_support: class grid and map differ in size");
  std::vector<Pixel> pixels;
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x)
      if (labels.is(y, x, RegionClass::kPromising) && !map.is_obstacle({x, y}))
        pixels.push_back({x, y});
  if (pixels.empty()) throw EmptySupportError();
  return SampleSupport(std::move(pixels));
}

Point sample_biased(const SampleSupport& support, SplitMix64& rng) {
  const Pixel p = support.pixels()[rng.below(support.size())];
  const double jx = rng.uniform();
  const double jy = rng.uniform();
  return {p.x + jx, p.y + jy};
}

}  // namespace lrrt
