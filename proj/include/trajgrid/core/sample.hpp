#pragma once

#include <torch/torch.h>

#include <string>
#include <vector>

#include "trajgrid/core/geometry.hpp"

namespace trajgrid {

struct SampleMeta {
  std::string scene_id;
  std::string agent_id;
  std::int64_t frame = 0;       // annotation frame of the anchor time t
  double rotation_deg = 0.0;    // accumulated augmentation rotation
  bool degenerate = false;      // no future point inside the grid
};

/// One training / evaluation example in the agent-centric frame.
struct GridSample {
  torch::Tensor past_grid;     // (t_h, N, N) bool
  torch::Tensor scene_grid;    // (3, N, N) float in [0, 1]
  torch::Tensor target_grids;  // (t_f, N, N) bool
  std::vector<Vec2> past_xy;   // agent-frame pixels, last element is (0, 0)
  std::vector<Vec2> future_xy; // agent-frame pixels
  Vec2 anchor_world;
  GridGeometry geometry;
  SampleMeta meta;

  int past_steps() const { return static_cast<int>(past_xy.size()); }
  int future_steps() const { return static_cast<int>(future_xy.size()); }
};

/// Rotates a sample about the grid centre. Boolean grids are re-rasterised from the rotated
/// coordinates; the scene grid is resampled bilinearly with zero fill.
GridSample rotate_sample(const GridSample& sample, double degrees);

/// Ground-truth future in world pixels (undoes any augmentation rotation).
std::vector<Vec2> future_world(const GridSample& sample);
/// Past positions in world pixels.
std::vector<Vec2> past_world(const GridSample& sample);

/// Bilinear rotation of a (C, N, N) float grid about its centre.
torch::Tensor rotate_scene_grid(const torch::Tensor& grid, double degrees);

}  // namespace trajgrid
