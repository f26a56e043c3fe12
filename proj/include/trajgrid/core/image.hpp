#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace trajgrid {

using Rgb = std::array<std::uint8_t, 3>;

/// Interleaved 8-bit RGB raster, row-major, row = image y.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
  /// Channel count of the file the image came from (1 for grayscale sources).
  int source_channels = 3;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill = {0, 0, 0});

  bool empty() const { return width == 0 || height == 0; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

  std::uint8_t at(int x, int y, int c) const { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
  Rgb pixel(int x, int y) const {
    const auto* p = &data[(static_cast<std::size_t>(y) * width + x) * 3];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb rgb) {
    auto* p = &data[(static_cast<std::size_t>(y) * width + x) * 3];
    p[0] = rgb[0];
    p[1] = rgb[1];
    p[2] = rgb[2];
  }
};

/// Reads PNG or JPEG, chosen by file signature. Grayscale sources are expanded to RGB.
RgbImage load_image(const std::filesystem::path& path);
void save_png(const RgbImage& image, const std::filesystem::path& path);

}  // namespace trajgrid
