#include "trajgrid/model/sampler.hpp"

#include "trajgrid/core/error.hpp"

namespace trajgrid {

void SamplerConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::config, "K must be at least 1");
  if (future_steps < 1 || grid_size < 1 || convlstm_hidden < 1 || convlstm_kernel < 1 || pool_size < 1 ||
      fc_hidden < 0 || !(init_std > 0.0)) {
    throw Error(ErrorCode::config, "sampler counts must be positive");
  }
  if (convlstm_kernel % 2 == 0) throw Error(ErrorCode::config, "ConvLSTM kernel must be odd");
  if (pool_size > grid_size) throw Error(ErrorCode::config, "pool size exceeds grid size");
}

void to_json(nlohmann::json& j, const SamplerConfig& c) {
  j = {{"k", c.k},
       {"future_steps", c.future_steps},
       {"grid_size", c.grid_size},
       {"convlstm_hidden", c.convlstm_hidden},
       {"convlstm_kernel", c.convlstm_kernel},
       {"pool_size", c.pool_size},
       {"fc_hidden", c.fc_hidden},
       {"init_std", c.init_std}};
}

void from_json(const nlohmann::json& j, SamplerConfig& c) {
  SamplerConfig d;
  c.k = j.value("k", d.k);
  c.future_steps = j.value("future_steps", d.future_steps);
  c.grid_size = j.value("grid_size", d.grid_size);
  c.convlstm_hidden = j.value("convlstm_hidden", d.convlstm_hidden);
  c.convlstm_kernel = j.value("convlstm_kernel", d.convlstm_kernel);
  c.pool_size = j.value("pool_size", d.pool_size);
  c.fc_hidden = j.value("fc_hidden", d.fc_hidden);
  c.init_std = j.value("init_std", d.init_std);
}

TrajectorySamplerImpl::TrajectorySamplerImpl(const SamplerConfig& config) : config_(config) {
  config.validate();
  cell = register_module("cell", ConvLSTMCell(1, config.convlstm_hidden, config.convlstm_kernel));
  pool = register_module("pool", torch::nn::AdaptiveMaxPool2d(torch::nn::AdaptiveMaxPool2dOptions(config.pool_size)));
  const std::int64_t features = static_cast<std::int64_t>(config.convlstm_hidden) * config.pool_size * config.pool_size;
  const std::int64_t outputs = 2 * config.k;
  fc = register_module("fc", torch::nn::Sequential());
  if (config.fc_hidden > 0) {
    fc->push_back(torch::nn::Linear(features, config.fc_hidden));
    fc->push_back(torch::nn::ReLU());
    fc->push_back(torch::nn::Linear(config.fc_hidden, outputs));
  } else {
    fc->push_back(torch::nn::Linear(features, outputs));
  }
  init_weights(*this, config.init_std);
}

torch::Tensor TrajectorySamplerImpl::forward(const torch::Tensor& probs) {
  if (probs.dim() != 4 || probs.size(1) != config_.future_steps) {
    throw Error(ErrorCode::shape, "sampler expects (B, " + std::to_string(config_.future_steps) + ", N, N) grids");
  }
  const auto batch = probs.size(0);
  auto first = probs.select(1, 0).unsqueeze(1);
  auto state = cell->initial_state(first);
  std::vector<torch::Tensor> steps;
  for (int t = 0; t < config_.future_steps; ++t) {
    state = cell->forward(probs.select(1, t).unsqueeze(1), state);
    auto pooled = pool->forward(state.hidden).reshape({batch, -1});
    steps.push_back(fc->forward(pooled).reshape({batch, config_.k, 2}));
  }
  return torch::stack(steps, 2) * config_.output_scale();
}

torch::Tensor average_displacement(const torch::Tensor& pred, const torch::Tensor& gt) {
  if (pred.dim() != 4 || gt.dim() != 3 || pred.size(0) != gt.size(0) || pred.size(2) != gt.size(1) ||
      pred.size(3) != 2 || gt.size(2) != 2) {
    throw Error(ErrorCode::length_mismatch, "expected pred (B, K, T, 2) and gt (B, T, 2)");
  }
  const auto diff = pred - gt.unsqueeze(1);
  const auto sq = diff.pow(2).sum(-1);
  const auto positive = sq > 0;
  // sqrt has an infinite derivative at zero; route zeros through a constant branch.
  const auto dist = torch::where(positive, torch::sqrt(torch::where(positive, sq, torch::ones_like(sq))),
                                 torch::zeros_like(sq));
  return dist.mean(-1);
}

torch::Tensor variety_loss(const torch::Tensor& pred, const torch::Tensor& gt) {
  return std::get<0>(average_displacement(pred, gt).min(1)).mean();
}

TrajectorySet to_trajectory_set(const torch::Tensor& positions) {
  const auto p = positions.to(torch::kDouble).contiguous();
  auto acc = p.accessor<double, 3>();
  TrajectorySet out;
  for (std::int64_t k = 0; k < p.size(0); ++k) {
    std::vector<Vec2> traj;
    for (std::int64_t t = 0; t < p.size(1); ++t) traj.push_back({acc[k][t][0], acc[k][t][1]});
    out.trajectories.push_back(std::move(traj));
  }
  return out;
}

TrajectorySet sample_trajectories(const torch::Tensor& probs, TrajectorySampler& model) {
  if (probs.dim() != 3) throw Error(ErrorCode::shape, "expected a (t_f, N, N) probability sequence");
  torch::NoGradGuard no_grad;
  return to_trajectory_set(model->forward(probs.unsqueeze(0).to(torch::kFloat)).squeeze(0));
}

TrajectorySet to_world(const TrajectorySet& pred, const GridSample& sample) {
  if (pred.frame != CoordinateFrame::agent_cells) throw Error(ErrorCode::spec, "trajectories are already in world pixels");
  TrajectorySet out{CoordinateFrame::world_pixels, {}};
  for (const auto& traj : pred.trajectories) {
    std::vector<Vec2> w;
    for (const auto& p : traj) {
      Vec2 px = p * sample.geometry.scale;
      if (sample.meta.rotation_deg != 0.0) px = rotate(px, -sample.meta.rotation_deg);
      w.push_back(px + sample.anchor_world);
    }
    out.trajectories.push_back(std::move(w));
  }
  return out;
}

TrajectorySet to_agent_cells(const TrajectorySet& world, const GridSample& sample) {
  if (world.frame != CoordinateFrame::world_pixels) throw Error(ErrorCode::spec, "trajectories are not in world pixels");
  TrajectorySet out{CoordinateFrame::agent_cells, {}};
  for (const auto& traj : world.trajectories) {
    std::vector<Vec2> a;
    for (const auto& p : traj) {
      Vec2 px = p - sample.anchor_world;
      if (sample.meta.rotation_deg != 0.0) px = rotate(px, sample.meta.rotation_deg);
      a.push_back(px / sample.geometry.scale);
    }
    out.trajectories.push_back(std::move(a));
  }
  return out;
}

}  // namespace trajgrid
