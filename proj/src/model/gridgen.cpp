#include "trajgrid/model/gridgen.hpp"

#include "trajgrid/core/error.hpp"

namespace trajgrid {

void GridGenConfig::validate() const {
  auto positive = [](int v) { return v > 0; };
  if (!positive(grid_size) || !positive(past_steps) || !positive(future_steps) || !positive(unet_blocks) ||
      !positive(unet_base_channels) || resnet_blocks < 0 || !positive(resnet_downsamplings) ||
      !positive(resnet_base_channels) || !positive(traj_feat_channels) || !positive(scene_feat_channels) ||
      !positive(convlstm_hidden) || !positive(convlstm_kernel)) {
    throw Error(ErrorCode::config, "grid generator counts must be positive");
  }
  if (traj_feat_channels + scene_feat_channels != 20) {
    throw Error(ErrorCode::config, "trajectory and scene feature channels must sum to 20");
  }
  if (grid_size % (1 << unet_blocks) != 0) {
    throw Error(ErrorCode::config, "grid size " + std::to_string(grid_size) + " is not divisible by 2^" +
                                       std::to_string(unet_blocks));
  }
  if (grid_size % (1 << resnet_downsamplings) != 0) {
    throw Error(ErrorCode::config, "grid size is not divisible by the ResNet downsampling factor");
  }
  if (convlstm_kernel % 2 == 0) throw Error(ErrorCode::config, "ConvLSTM kernel must be odd");
  if (dropout < 0.0 || dropout >= 1.0) throw Error(ErrorCode::config, "dropout must be in [0, 1)");
  if (!(init_std > 0.0) || !(positive_class_weight > 0.0) || leaky_slope < 0.0) {
    throw Error(ErrorCode::config, "init_std and positive_class_weight must be positive");
  }
}

void to_json(nlohmann::json& j, const GridGenConfig& c) {
  j = {{"grid_size", c.grid_size},
       {"past_steps", c.past_steps},
       {"future_steps", c.future_steps},
       {"unet_blocks", c.unet_blocks},
       {"unet_base_channels", c.unet_base_channels},
       {"resnet_blocks", c.resnet_blocks},
       {"resnet_downsamplings", c.resnet_downsamplings},
       {"resnet_base_channels", c.resnet_base_channels},
       {"traj_feat_channels", c.traj_feat_channels},
       {"scene_feat_channels", c.scene_feat_channels},
       {"convlstm_hidden", c.convlstm_hidden},
       {"convlstm_kernel", c.convlstm_kernel},
       {"dropout", c.dropout},
       {"leaky_slope", c.leaky_slope},
       {"init_std", c.init_std},
       {"positive_class_weight", c.positive_class_weight}};
}

void from_json(const nlohmann::json& j, GridGenConfig& c) {
  GridGenConfig d;
  c.grid_size = j.value("grid_size", d.grid_size);
  c.past_steps = j.value("past_steps", d.past_steps);
  c.future_steps = j.value("future_steps", d.future_steps);
  c.unet_blocks = j.value("unet_blocks", d.unet_blocks);
  c.unet_base_channels = j.value("unet_base_channels", d.unet_base_channels);
  c.resnet_blocks = j.value("resnet_blocks", d.resnet_blocks);
  c.resnet_downsamplings = j.value("resnet_downsamplings", d.resnet_downsamplings);
  c.resnet_base_channels = j.value("resnet_base_channels", d.resnet_base_channels);
  c.traj_feat_channels = j.value("traj_feat_channels", d.traj_feat_channels);
  c.scene_feat_channels = j.value("scene_feat_channels", d.scene_feat_channels);
  c.convlstm_hidden = j.value("convlstm_hidden", d.convlstm_hidden);
  c.convlstm_kernel = j.value("convlstm_kernel", d.convlstm_kernel);
  c.dropout = j.value("dropout", d.dropout);
  c.leaky_slope = j.value("leaky_slope", d.leaky_slope);
  c.init_std = j.value("init_std", d.init_std);
  c.positive_class_weight = j.value("positive_class_weight", d.positive_class_weight);
}

UNetEncoder build_trajectory_encoder(const GridGenConfig& config) {
  config.validate();
  UNetOptions o;
  o.in_channels = config.past_steps;
  o.out_channels = config.traj_feat_channels;
  o.blocks = config.unet_blocks;
  o.base_channels = config.unet_base_channels;
  o.leaky_slope = config.leaky_slope;
  o.dropout = config.dropout;
  UNetEncoder enc(o);
  init_weights(*enc, config.init_std);
  return enc;
}

ResNetEncoder build_scene_encoder(const GridGenConfig& config) {
  config.validate();
  ResNetOptions o;
  o.out_channels = config.scene_feat_channels;
  o.blocks = config.resnet_blocks;
  o.downsamplings = config.resnet_downsamplings;
  o.base_channels = config.resnet_base_channels;
  o.leaky_slope = config.leaky_slope;
  ResNetEncoder enc(o);
  init_weights(*enc, config.init_std);
  return enc;
}

GridGeneratorImpl::GridGeneratorImpl(const GridGenConfig& config) : config_(config) {
  config.validate();
  trajectory_encoder = register_module("trajectory_encoder", build_trajectory_encoder(config));
  scene_encoder = register_module("scene_encoder", build_scene_encoder(config));
  decoder = register_module("decoder", ConvLSTMCell(config.traj_feat_channels + config.scene_feat_channels,
                                                    config.convlstm_hidden, config.convlstm_kernel));
  head = register_module("head", torch::nn::Conv2d(torch::nn::Conv2dOptions(config.convlstm_hidden, 2, 1)));
  init_weights(*decoder, config.init_std);
  init_weights(*head, config.init_std);
}

torch::Tensor GridGeneratorImpl::forward(const torch::Tensor& past, const torch::Tensor& scene) {
  if (past.dim() != 4 || past.size(1) != config_.past_steps || scene.dim() != 4 || scene.size(1) != 3) {
    throw Error(ErrorCode::shape, "grid generator expects past (B, t_h, N, N) and scene (B, 3, N, N)");
  }
  return decode_grids(trajectory_encoder->forward(past), scene_encoder->forward(scene));
}

torch::Tensor GridGeneratorImpl::decode_grids(const torch::Tensor& traj_feat, const torch::Tensor& scene_feat) {
  if (traj_feat.size(2) != scene_feat.size(2) || traj_feat.size(3) != scene_feat.size(3)) {
    throw Error(ErrorCode::shape, "trajectory and scene features must share spatial size");
  }
  const auto fused = torch::cat({traj_feat, scene_feat}, 1);
  if (fused.size(1) != 20) throw Error(ErrorCode::shape, "fused feature map must have 20 channels");
  auto state = decoder->initial_state(fused);
  std::vector<torch::Tensor> steps;
  steps.reserve(config_.future_steps);
  for (int t = 0; t < config_.future_steps; ++t) {
    state = decoder->forward(fused, state);
    steps.push_back(head->forward(state.hidden));
  }
  return torch::stack(steps, 1);
}

torch::Tensor grid_loss(const torch::Tensor& logits, const torch::Tensor& target, double positive_class_weight) {
  if (logits.dim() != 5 || logits.size(2) != 2 || target.dim() != 4 || logits.size(0) != target.size(0) ||
      logits.size(1) != target.size(1) || logits.size(3) != target.size(2) || logits.size(4) != target.size(3)) {
    throw Error(ErrorCode::shape, "grid_loss expects logits (B, T, 2, N, N) and target (B, T, N, N)");
  }
  const auto log_p = torch::log_softmax(logits, 2);
  const auto occupied = target.to(torch::kBool);
  const auto nll = -torch::where(occupied, log_p.select(2, 1), log_p.select(2, 0));
  const auto weight = torch::where(occupied, torch::full_like(nll, positive_class_weight), torch::ones_like(nll));
  return (weight * nll).mean();
}

torch::Tensor occupancy_probabilities(const torch::Tensor& logits) { return torch::softmax(logits, 2).select(2, 1); }

torch::Tensor forward_probabilities(const GridSample& sample, GridGenerator& model) {
  auto logits = model->forward(sample.past_grid.to(torch::kFloat).unsqueeze(0), sample.scene_grid.unsqueeze(0));
  return occupancy_probabilities(logits).squeeze(0);
}

}  // namespace trajgrid
