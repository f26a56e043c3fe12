#pragma once

#include <string>
#include <vector>

#include "trajgrid/core/sample.hpp"
#include "trajgrid/dataset/synthetic.hpp"
#include "trajgrid/dataset/windowing.hpp"
#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid::testing {

inline GridGenConfig tiny_gridgen(int grid = 16) {
  GridGenConfig c;
  c.grid_size = grid;
  c.unet_blocks = 4;
  c.unet_base_channels = 4;
  c.resnet_blocks = 2;
  c.resnet_base_channels = 4;
  c.convlstm_kernel = 3;
  c.convlstm_hidden = 4;
  c.positive_class_weight = 50.0;
  return c;
}

inline SamplerConfig tiny_sampler(const GridGenConfig& g, int k = 3) {
  SamplerConfig c;
  c.k = k;
  c.future_steps = g.future_steps;
  c.grid_size = g.grid_size;
  c.convlstm_hidden = g.convlstm_hidden;
  c.convlstm_kernel = g.convlstm_kernel;
  c.pool_size = 4;
  c.fc_hidden = 32;
  return c;
}

/// Windowed samples from agents walking a straight corridor.
inline std::vector<GridSample> corridor_samples(std::size_t count, int grid, std::uint64_t seed,
                                                          SyntheticScene* scene_out = nullptr) {
  auto spec = straight_corridor();
  AgentSpec agents;
  agents.min_steps = 24;
  agents.max_steps = 30;
  auto scene = generate_synthetic(spec, agents, 20, seed);
  auto samples = window_samples(scene.trajectories, WindowConfig{},
                                          GridGeometry{grid, 10.0}, scene.image, "corridor");
  if (samples.size() > count) samples.resize(count);
  if (scene_out) *scene_out = std::move(scene);
  return samples;
}

}  // namespace trajgrid::testing
