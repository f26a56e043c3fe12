#pragma once

#include <cstdint>
#include <vector>

namespace trajgrid {

enum class SemanticClass : std::uint8_t { path = 0, terrain = 1, obstacle = 2 };

/// Per-pixel scene categories used by the correspondence-to-scene metric.
struct SemanticLabelMap {
  int width = 0;
  int height = 0;
  std::vector<SemanticClass> classes;

  SemanticLabelMap() = default;
  SemanticLabelMap(int w, int h, SemanticClass fill)
      : width(w), height(h), classes(static_cast<std::size_t>(w) * h, fill) {}

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  SemanticClass at(int x, int y) const { return classes[static_cast<std::size_t>(y) * width + x]; }
  void set(int x, int y, SemanticClass c) { classes[static_cast<std::size_t>(y) * width + x] = c; }
};

}  // namespace trajgrid
