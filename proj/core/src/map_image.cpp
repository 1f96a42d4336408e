#include "lrrt/map_image.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <string>

#include "lrrt/errors.hpp"
#include "lrrt/png_codec.hpp"

namespace lrrt {

namespace {

struct Square {
  int x0 = std::numeric_limits<int>::max();
  int y0 = std::numeric_limits<int>::max();
  int x1 = -1;
  int y1 = -1;
  std::size_t count = 0;

  void add(int x, int y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
    ++count;
  }
  int side() const { return x1 - x0 + 1; }
};

// The endpoint marker must be one filled axis-aligned square.
int check_square(const Square& s, const char* what) {
  if (s.count == 0) throw FormatError(std::string("map image has no ") + what + " region");
  const int w = s.x1 - s.x0 + 1;
  const int h = s.y1 - s.y0 + 1;
  if (w != h || s.count != static_cast<std::size_t>(w) * h)
    throw FormatError(std::string("map image must contain exactly one square ") + what +
                      " region");
  return w;
}

void paint_square(RgbImage& image, Pixel center, int side, Rgb color) {
  const int x0 = center.x - side / 2;
  const int y0 = center.y - side / 2;
  for (int y = y0; y < y0 + side; ++y) {
    for (int x = x0; x < x0 + side; ++x) {
      if (x < 0 || y < 0 || x >= image.width || y >= image.height)
        throw InvalidArgument("encode_map_image: endpoint marker leaves the canvas");
      auto* px = &image.rgb[(static_cast<std::size_t>(y) * image.width + x) * 3];
      px[0] = color.r;
      px[1] = color.g;
      px[2] = color.b;
    }
  }
}

}  // namespace

std::vector<std::uint8_t> encode_map_image(const WorkspaceMap& map, const ClassGrid* overlay) {
  if (overlay && (overlay->width != map.width || overlay->height != map.height))
    throw InvalidArgument("encode_map_image: overlay size differs from map");
  RgbImage image{map.width, map.height, {}};
  image.rgb.resize(static_cast<std::size_t>(map.width) * map.height * 3);
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      Rgb c = map.is_obstacle({x, y}) ? kObstacleColor : kFreeColor;
      if (c == kFreeColor && overlay && overlay->is(y, x, RegionClass::kPromising))
        c = kPromisingColor;
      auto* px = &image.rgb[(static_cast<std::size_t>(y) * map.width + x) * 3];
      px[0] = c.r;
      px[1] = c.g;
      px[2] = c.b;
    }
  }
  paint_square(image, map.start, map.block_px, kStartColor);
  paint_square(image, map.goal, map.block_px, kGoalColor);
  return encode_png(image);
}

DecodedMapImage decode_map_image(std::span<const std::uint8_t> png_bytes) {
  const RgbImage image = decode_png(png_bytes);
  DecodedMapImage out;
  WorkspaceMap& map = out.map;
  map.width = image.width;
  map.height = image.height;
  map.occupancy.assign(static_cast<std::size_t>(map.width) * map.height, 0);
  out.labels = ClassGrid(map.height, map.width);
  Square start, goal;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const auto* px = &image.rgb[(static_cast<std::size_t>(y) * map.width + x) * 3];
      const Rgb c{px[0], px[1], px[2]};
      if (c == kObstacleColor) {
        map.occupancy[static_cast<std::size_t>(y) * map.width + x] = 1;
        out.labels.set(y, x, RegionClass::kObstacle);
      } else if (c == kFreeColor) {
        // free, default label
      } else if (c == kStartColor) {
        start.add(x, y);
        out.labels.set(y, x, RegionClass::kPromising);
      } else if (c == kGoalColor) {
        goal.add(x, y);
        out.labels.set(y, x, RegionClass::kPromising);
      } else if (c == kPromisingColor) {
        out.has_overlay = true;
        out.labels.set(y, x, RegionClass::kPromising);
      } else {
        throw FormatError("map image pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") has off-palette colour (" + std::to_string(c.r) + "," +
                          std::to_string(c.g) + "," + std::to_string(c.b) + ")");
      }
    }
  }
  const int side = check_square(start, "start");
  if (check_square(goal, "goal") != side)
    throw FormatError("map image start and goal regions differ in size");
  map.block_px = side;
  map.start = {start.x0 + side / 2, start.y0 + side / 2};
  map.goal = {goal.x0 + side / 2, goal.y0 + side / 2};
  return out;
}

void write_map_image(const std::filesystem::path& path, const WorkspaceMap& map,
                     const ClassGrid* overlay) {
  write_file_bytes(path, encode_map_image(map, overlay));
}

DecodedMapImage read_map_image(const std::filesystem::path& path) {
  return decode_map_image(read_file_bytes(path));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace lrrt
