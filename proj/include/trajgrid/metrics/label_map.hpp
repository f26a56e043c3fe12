#pragma once

#include <filesystem>

#include "trajgrid/core/image.hpp"
#include "trajgrid/core/semantic.hpp"

namespace trajgrid {

/// Label colours: path white, terrain green, obstacle red.
struct LabelPalette {
  Rgb path{255, 255, 255};
  Rgb terrain{0, 255, 0};
  Rgb obstacle{255, 0, 0};
};

/// Exact palette match, otherwise the nearest palette colour in RGB. Throws
/// Error(palette) when more than 5% of pixels are not exact palette colours.
SemanticLabelMap import_label_map(const RgbImage& image, const LabelPalette& palette = {});

/// Single-channel codes {0 = path, 1 = terrain, 2 = obstacle}; throws Error(palette) on other codes.
SemanticLabelMap import_indexed_label_map(const RgbImage& gray);

/// Loads a label raster: grayscale files are read as indexed codes, colour files via the palette.
SemanticLabelMap load_label_map(const std::filesystem::path& path, const LabelPalette& palette = {});

RgbImage label_map_to_rgb(const SemanticLabelMap& labels, const LabelPalette& palette = {});

}  // namespace trajgrid
