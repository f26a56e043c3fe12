#pragma once

#include <torch/torch.h>

#include <json.hpp>

#include "trajgrid/core/sample.hpp"
#include "trajgrid/model/encoders.hpp"
#include "trajgrid/model/layers.hpp"

namespace trajgrid {

struct GridGenConfig {
  int grid_size = 128;
  int past_steps = 8;
  int future_steps = 12;
  int unet_blocks = 7;
  int unet_base_channels = 64;
  int resnet_blocks = 9;
  int resnet_downsamplings = 2;
  int resnet_base_channels = 64;
  int traj_feat_channels = 10;
  int scene_feat_channels = 10;  // traj + scene must be 20
  int convlstm_hidden = 16;
  int convlstm_kernel = 11;
  double dropout = 0.5;
  double leaky_slope = 0.2;
  double init_std = 0.02;
  double positive_class_weight = 1024.0;

  /// Throws Error(config) on any violated invariant.
  void validate() const;
  bool operator==(const GridGenConfig&) const = default;
};

void to_json(nlohmann::json& j, const GridGenConfig& c);
void from_json(const nlohmann::json& j, GridGenConfig& c);

/// Probability-grid generator: U-Net over the past grid, ResNet over the scene, and a
/// ConvLSTM decoder unrolled t_f steps over the fused 20-channel feature map.
class GridGeneratorImpl : public torch::nn::Module {
 public:
  explicit GridGeneratorImpl(const GridGenConfig& config);

  /// past (B, t_h, N, N), scene (B, 3, N, N) -> logits (B, t_f, 2, N, N); channel 1 = occupied.
  torch::Tensor forward(const torch::Tensor& past, const torch::Tensor& scene);
  /// ConvLSTM decoding of precomputed encoder features.
  torch::Tensor decode_grids(const torch::Tensor& traj_feat, const torch::Tensor& scene_feat);

  const GridGenConfig& config() const { return config_; }

  UNetEncoder trajectory_encoder{nullptr};
  ResNetEncoder scene_encoder{nullptr};
  ConvLSTMCell decoder{nullptr};
  torch::nn::Conv2d head{nullptr};

 private:
  GridGenConfig config_;
};
TORCH_MODULE(GridGenerator);

UNetEncoder build_trajectory_encoder(const GridGenConfig& config);
ResNetEncoder build_scene_encoder(const GridGenConfig& config);

/// Mean over cells and steps of the two-class cross-entropy, occupied cells weighted by
/// `positive_class_weight`. logits (B, T, 2, N, N), target (B, T, N, N) bool.
torch::Tensor grid_loss(const torch::Tensor& logits, const torch::Tensor& target, double positive_class_weight);

/// Occupied-class softmax probabilities, (B, T, N, N).
torch::Tensor occupancy_probabilities(const torch::Tensor& logits);

/// (t_f, N, N) occupancy probabilities for a single sample, model in its current mode.
torch::Tensor forward_probabilities(const GridSample& sample, GridGenerator& model);

}  // namespace trajgrid
