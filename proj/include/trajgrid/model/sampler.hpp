#pragma once

#include <torch/torch.h>

#include <json.hpp>
#include <vector>

#include "trajgrid/core/sample.hpp"
#include "trajgrid/model/layers.hpp"

namespace trajgrid {

struct SamplerConfig {
  int k = 5;
  int future_steps = 12;
  int grid_size = 128;
  int convlstm_hidden = 16;
  int convlstm_kernel = 11;
  int pool_size = 8;
  int fc_hidden = 256;  // 0 means a single linear layer
  double init_std = 0.02;

  void validate() const;
  /// Grid cells per unit of raw network output: positions are regressed relative to the grid half-extent.
  double output_scale() const { return grid_size / 2.0; }
  bool operator==(const SamplerConfig&) const = default;
};

void to_json(nlohmann::json& j, const SamplerConfig& c);
void from_json(const nlohmann::json& j, SamplerConfig& c);

enum class CoordinateFrame { agent_cells, world_pixels };

/// K candidate futures of t_f points each.
struct TrajectorySet {
  CoordinateFrame frame = CoordinateFrame::agent_cells;
  std::vector<std::vector<Vec2>> trajectories;

  std::size_t size() const { return trajectories.size(); }
};

/// Second stage: a ConvLSTM reads one probability grid per step; its hidden state is max-pooled
/// and a fully connected head emits K (x, y) positions for that step.
class TrajectorySamplerImpl : public torch::nn::Module {
 public:
  explicit TrajectorySamplerImpl(const SamplerConfig& config);

  /// probs (B, t_f, N, N) -> positions (B, K, t_f, 2) in agent-frame grid cells.
  torch::Tensor forward(const torch::Tensor& probs);

  const SamplerConfig& config() const { return config_; }

  ConvLSTMCell cell{nullptr};
  torch::nn::AdaptiveMaxPool2d pool{nullptr};
  torch::nn::Sequential fc{nullptr};

 private:
  SamplerConfig config_;
};
TORCH_MODULE(TrajectorySampler);

/// Best-of-K average displacement: mean over the batch of min_k ADE_k. pred (B, K, T, 2),
/// gt (B, T, 2). Only the closest candidate receives gradient.
torch::Tensor variety_loss(const torch::Tensor& pred, const torch::Tensor& gt);

/// Per-candidate average displacement (B, K); exact zero (with zero gradient) at coincident points.
torch::Tensor average_displacement(const torch::Tensor& pred, const torch::Tensor& gt);

/// Runs the sampler on one (t_f, N, N) probability sequence.
TrajectorySet sample_trajectories(const torch::Tensor& probs, TrajectorySampler& model);

/// (K, T, 2) tensor of agent-frame cells to a TrajectorySet.
TrajectorySet to_trajectory_set(const torch::Tensor& positions);

/// world = R(-rotation) (cells * scale) + anchor; for unrotated samples world = cells * scale + anchor.
TrajectorySet to_world(const TrajectorySet& pred, const GridSample& sample);
/// Inverse of to_world.
TrajectorySet to_agent_cells(const TrajectorySet& world, const GridSample& sample);

}  // namespace trajgrid
