#pragma once

#include <string>
#include <vector>

#include "trajgrid/core/image.hpp"
#include "trajgrid/core/sample.hpp"

namespace trajgrid {

struct WindowConfig {
  int past_steps = 8;         // t_h, 3.2 s at 0.4 s per step
  int future_steps = 12;      // t_f, 4.8 s
  std::int64_t stride_frames = 12;  // 0.4 s at 30 fps
};

/// Builds one sample from world-frame windows; the anchor is the last past position.
GridSample make_sample(const PastWindow& past_world, const FutureWindow& future_world, const RgbImage& scene,
                       const GridGeometry& geom, SampleMeta meta);

/// Slides a (t_h + t_f)-point window one stride step at a time along every track.
/// Tracks are resampled at `stride_frames` from their first frame; a missing strided frame
/// breaks the chain.
std::vector<GridSample> window_samples(const std::vector<Trajectory>& tracks, const WindowConfig& cfg,
                                       const GridGeometry& geom, const RgbImage& scene,
                                       const std::string& scene_id);

/// Number of samples a chain of `points` strided positions yields.
inline std::size_t window_count(std::size_t points, const WindowConfig& cfg) {
  const auto span = static_cast<std::size_t>(cfg.past_steps + cfg.future_steps);
  return points >= span ? points - span + 1 : 0;
}

}  // namespace trajgrid
