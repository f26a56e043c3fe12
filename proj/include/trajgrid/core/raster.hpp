#pragma once

#include <torch/torch.h>

#include <map>
#include <span>
#include <string>

#include "trajgrid/core/geometry.hpp"
#include "trajgrid/core/image.hpp"

namespace trajgrid {

/// One boolean channel per position; a channel is all zero when its point is off-grid.
torch::Tensor rasterize_positions(std::span<const Vec2> agent_frame_points, const GridGeometry& geom);

/// (t_h, N, N) boolean past-trajectory grid.
torch::Tensor rasterize_past(const PastWindow& agent_frame_window, const GridGeometry& geom);

struct TargetRaster {
  torch::Tensor grids;      // (t_f, N, N) bool
  bool degenerate = false;  // every future point fell outside the grid
};

TargetRaster rasterize_target(const FutureWindow& agent_frame_window, const GridGeometry& geom);

/// Crops the (N*scale)^2 pixel window centred on `anchor` and area-averages it down to a
/// (3, N, N) float tensor in [0, 1]. Pixels outside the image count as black.
torch::Tensor crop_scene(const RgbImage& scene, Vec2 anchor, const GridGeometry& geom);

/// Scene images keyed by scene id.
class SceneLibrary {
 public:
  void add(std::string scene_id, RgbImage image);
  bool contains(const std::string& scene_id) const { return images_.count(scene_id) > 0; }
  /// Throws Error(missing_scene) for unknown ids.
  const RgbImage& get(const std::string& scene_id) const;

 private:
  std::map<std::string, RgbImage> images_;
};

}  // namespace trajgrid
