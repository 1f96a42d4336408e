#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lrrt/grid_world.hpp"
#include "lrrt/region.hpp"

namespace lrrt {

/// RGB palette of map images. Any other colour is a decode error.
struct Rgb {
  std::uint8_t r, g, b;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};
inline constexpr Rgb kObstacleColor{0, 0, 0};
inline constexpr Rgb kFreeColor{255, 255, 255};
inline constexpr Rgb kStartColor{255, 0, 0};
inline constexpr Rgb kGoalColor{0, 0, 255};
inline constexpr Rgb kPromisingColor{0, 255, 0};

/// A decoded map image: the workspace plus the ground-truth overlay, if
/// any. In the overlay, green, start and goal pixels are `promising`,
/// black is `obstacle` and white is `free`.
struct DecodedMapImage {
  WorkspaceMap map;
  ClassGrid labels;
  bool has_overlay = false;  ///< at least one green pixel was present
};

/// Encodes `map` as an RGB PNG. The start and goal are drawn as
/// block_px-sided squares whose top-left corner is `start - block_px / 2`.
/// When `overlay` is given, its promising pixels on free space are drawn
/// green underneath the endpoint squares.
std::vector<std::uint8_t> encode_map_image(const WorkspaceMap& map,
                                           const ClassGrid* overlay = nullptr);

/// Decodes a map image. Fails on off-palette colours and unless exactly
/// one filled square of start colour and one of goal colour is present;
/// `block_px` is recovered from the side of the start square.
DecodedMapImage decode_map_image(std::span<const std::uint8_t> png_bytes);

void write_map_image(const std::filesystem::path& path, const WorkspaceMap& map,
                     const ClassGrid* overlay = nullptr);
DecodedMapImage read_map_image(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
/// Writes via a temporary file and rename so readers never see partial data.
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace lrrt
