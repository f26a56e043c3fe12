#include "trajgrid/metrics/label_map.hpp"

#include <limits>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

int squared_distance(Rgb a, Rgb b) {
  int d = 0;
  for (int c = 0; c < 3; ++c) {
    const int diff = int(a[c]) - int(b[c]);
    d += diff * diff;
  }
  return d;
}

}  // namespace

SemanticLabelMap import_label_map(const RgbImage& image, const LabelPalette& palette) {
  const std::array<std::pair<Rgb, SemanticClass>, 3> entries{{{palette.path, SemanticClass::path},
                                                               {palette.terrain, SemanticClass::terrain},
                                                               {palette.obstacle, SemanticClass::obstacle}}};
  SemanticLabelMap out(image.width, image.height, SemanticClass::path);
  std::size_t inexact = 0;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const Rgb px = image.pixel(x, y);
      int best = std::numeric_limits<int>::max();
      SemanticClass cls = SemanticClass::path;
      for (const auto& [color, c] : entries) {
        const int d = squared_distance(px, color);
        if (d < best) {
          best = d;
          cls = c;
        }
      }
      if (best != 0) ++inexact;
      out.set(x, y, cls);
    }
  }
  const auto pixels = static_cast<std::size_t>(image.width) * image.height;
  if (pixels > 0 && inexact * 20 > pixels) {
    throw Error(ErrorCode::palette, std::to_string(inexact) + " of " + std::to_string(pixels) +
                                        " pixels are not palette colours");
  }
  return out;
}

SemanticLabelMap import_indexed_label_map(const RgbImage& gray) {
  SemanticLabelMap out(gray.width, gray.height, SemanticClass::path);
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const auto code = gray.at(x, y, 0);
      if (code > 2) throw Error(ErrorCode::palette, "label code " + std::to_string(code) + " is not 0, 1 or 2");
      out.set(x, y, static_cast<SemanticClass>(code));
    }
  }
  return out;
}

SemanticLabelMap load_label_map(const std::filesystem::path& path, const LabelPalette& palette) {
  const auto image = load_image(path);
  return image.source_channels == 1 ? import_indexed_label_map(image) : import_label_map(image, palette);
}

RgbImage label_map_to_rgb(const SemanticLabelMap& labels, const LabelPalette& palette) {
  RgbImage out(labels.width, labels.height);
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      switch (labels.at(x, y)) {
        case SemanticClass::path: out.set(x, y, palette.path); break;
        case SemanticClass::terrain: out.set(x, y, palette.terrain); break;
        case SemanticClass::obstacle: out.set(x, y, palette.obstacle); break;
      }
    }
  }
  return out;
}

}  // namespace trajgrid
