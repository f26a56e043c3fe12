#include "trajgrid/training/trainer.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "trajgrid/core/error.hpp"
#include "trajgrid/dataset/sample_store.hpp"
#include "trajgrid/metrics/metrics.hpp"
#include "trajgrid/model/checkpoint.hpp"
#include "trajgrid/training/scheduler.hpp"

namespace trajgrid {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::config, "learning_rate must be positive");
  if (batch_size < 1) throw Error(ErrorCode::config, "batch_size must be positive");
  if (max_epochs < 0) throw Error(ErrorCode::config, "max_epochs must be non-negative");
  if (scheduler_patience < 1) throw Error(ErrorCode::config, "scheduler_patience must be at least 1");
  if (!(scheduler_factor > 0.0 && scheduler_factor < 1.0)) {
    throw Error(ErrorCode::config, "scheduler_factor must be in (0, 1)");
  }
  if (adam_beta1 < 0.0 || adam_beta1 >= 1.0) throw Error(ErrorCode::config, "adam_beta1 must be in [0, 1)");
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"stage", c.stage == Stage::gridgen ? "gridgen" : "sampler"},
       {"learning_rate", c.learning_rate},
       {"adam_beta1", c.adam_beta1},
       {"batch_size", c.batch_size},
       {"max_epochs", c.max_epochs},
       {"scheduler_patience", c.scheduler_patience},
       {"scheduler_factor", c.scheduler_factor},
       {"augment_rotation", c.augment_rotation},
       {"seed", c.seed},
       {"run_dir", c.run_dir.string()}};
}

void write_loss_curve(const std::filesystem::path& path, const std::vector<EpochRecord>& curve) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out.precision(10);
  out << "epoch,train_loss,val_loss,lr\n";
  for (const auto& r : curve) out << r.epoch << ',' << r.train_loss << ',' << r.val_loss << ',' << r.learning_rate << '\n';
}

namespace {

using Snapshot = std::vector<torch::Tensor>;

Snapshot snapshot(torch::nn::Module& m) {
  Snapshot s;
  for (const auto& p : m.parameters()) s.push_back(p.detach().clone());
  for (const auto& b : m.buffers()) s.push_back(b.detach().clone());
  return s;
}

void restore(torch::nn::Module& m, const Snapshot& s) {
  torch::NoGradGuard no_grad;
  std::size_t i = 0;
  for (auto& p : m.parameters()) p.copy_(s[i++]);
  for (auto& b : m.buffers()) b.copy_(s[i++]);
}

void set_learning_rate(torch::optim::Adam& opt, double lr) {
  for (auto& group : opt.param_groups()) static_cast<torch::optim::AdamOptions&>(group.options()).lr(lr);
}

std::vector<std::vector<std::size_t>> make_batches(std::size_t n, int batch_size, std::mt19937_64* rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (rng) std::shuffle(order.begin(), order.end(), *rng);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < n; i += batch_size) {
    batches.emplace_back(order.begin() + i, order.begin() + std::min(n, i + batch_size));
  }
  return batches;
}

torch::Tensor index_tensor(const std::vector<std::size_t>& idx) {
  std::vector<std::int64_t> v(idx.begin(), idx.end());
  return torch::tensor(v, torch::kLong);
}

// Epoch loop shared by both stages. `train_batch` runs one optimisation step and returns the
// batch loss; `eval_loss` scores the validation set.
struct LoopHooks {
  std::function<double(const std::vector<std::size_t>&)> train_batch;
  std::function<double()> eval_loss;
  std::function<void(const std::filesystem::path&)> save_best;
};

TrainResult run_epochs(const TrainConfig& cfg, torch::nn::Module& model, torch::optim::Adam& opt, std::size_t n_train,
                       bool has_val, std::mt19937_64& rng, const LoopHooks& hooks, const char* tag) {
  TrainResult result;
  PlateauScheduler scheduler(cfg.learning_rate, cfg.scheduler_patience, cfg.scheduler_factor);
  Snapshot best = snapshot(model);
  double best_loss = std::numeric_limits<double>::infinity();
  if (!cfg.run_dir.empty()) {
    std::filesystem::create_directories(cfg.run_dir);
    std::ofstream(cfg.run_dir / (std::string(tag) + "_train_config.json")) << nlohmann::json(cfg).dump(2) << '\n';
  }

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    model.train();
    const double lr = scheduler.learning_rate();
    double sum = 0.0;
    std::size_t seen = 0;
    for (const auto& batch : make_batches(n_train, cfg.batch_size, &rng)) {
      sum += hooks.train_batch(batch) * static_cast<double>(batch.size());
      seen += batch.size();
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = sum / static_cast<double>(seen);
    model.eval();
    rec.val_loss = has_val ? hooks.eval_loss() : rec.train_loss;
    rec.learning_rate = lr;
    result.curve.push_back(rec);
    if (cfg.verbose) {
      std::cerr << tag << " epoch " << epoch << " train " << rec.train_loss << " val " << rec.val_loss << " lr " << lr
                << '\n';
    }
    if (rec.val_loss < best_loss) {
      best_loss = rec.val_loss;
      best = snapshot(model);
      result.best_epoch = epoch;
      result.best_val_loss = best_loss;
      if (!cfg.run_dir.empty()) hooks.save_best(cfg.run_dir / (std::string(tag) + "_best.pt"));
    }
    if (scheduler.step(rec.val_loss)) set_learning_rate(opt, scheduler.learning_rate());
    if (!cfg.run_dir.empty()) write_loss_curve(cfg.run_dir / (std::string(tag) + "_loss.csv"), result.curve);
  }
  restore(model, best);
  model.eval();
  return result;
}

std::vector<GridSample> gather(const std::vector<GridSample>& samples, const std::vector<std::size_t>& idx,
                               bool augment, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  std::vector<GridSample> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(augment ? rotate_sample(samples[i], angle(rng)) : samples[i]);
  return out;
}

double gridgen_eval_loss(GridGenerator& model, const std::vector<GridSample>& samples, int batch_size) {
  torch::NoGradGuard no_grad;
  double sum = 0.0;
  for (const auto& batch : make_batches(samples.size(), batch_size, nullptr)) {
    std::vector<const GridSample*> ptrs;
    for (auto i : batch) ptrs.push_back(&samples[i]);
    const auto b = collate(ptrs);
    const auto logits = model->forward(b.past, b.scene);
    sum += grid_loss(logits, b.target, model->config().positive_class_weight).item<double>() * batch.size();
  }
  return sum / static_cast<double>(samples.size());
}

torch::Tensor future_cells(const std::vector<GridSample>& samples) {
  std::vector<const GridSample*> ptrs;
  for (const auto& s : samples) ptrs.push_back(&s);
  return collate(ptrs).future_cells;
}

}  // namespace

TrainResult train_gridgen(const TrainConfig& cfg, GridGenerator& model, const std::vector<GridSample>& train,
                          const std::vector<GridSample>& val) {
  cfg.validate();
  if (cfg.max_epochs == 0) return {};
  if (train.empty()) throw Error(ErrorCode::config, "no training samples");
  torch::manual_seed(cfg.seed);
  std::mt19937_64 rng(cfg.seed);
  torch::optim::Adam opt(model->parameters(),
                         torch::optim::AdamOptions(cfg.learning_rate).betas({cfg.adam_beta1, 0.999}));
  const double weight = model->config().positive_class_weight;

  LoopHooks hooks;
  hooks.train_batch = [&](const std::vector<std::size_t>& idx) {
    const auto batch_samples = gather(train, idx, cfg.augment_rotation, rng);
    const auto b = collate(batch_samples);
    opt.zero_grad();
    auto loss = grid_loss(model->forward(b.past, b.scene), b.target, weight);
    loss.backward();
    opt.step();
    return loss.item<double>();
  };
  hooks.eval_loss = [&] { return gridgen_eval_loss(model, val, cfg.batch_size); };
  hooks.save_best = [&](const std::filesystem::path& p) { save_gridgen(p, model); };
  return run_epochs(cfg, *model, opt, train.size(), !val.empty(), rng, hooks, "gridgen");
}

torch::Tensor precompute_probabilities(GridGenerator& gridgen, const std::vector<GridSample>& samples, int batch_size) {
  torch::NoGradGuard no_grad;
  const bool was_training = gridgen->is_training();
  gridgen->eval();
  std::vector<torch::Tensor> chunks;
  for (const auto& batch : make_batches(samples.size(), batch_size, nullptr)) {
    std::vector<const GridSample*> ptrs;
    for (auto i : batch) ptrs.push_back(&samples[i]);
    const auto b = collate(ptrs);
    chunks.push_back(occupancy_probabilities(gridgen->forward(b.past, b.scene)));
  }
  gridgen->train(was_training);
  return torch::cat(chunks, 0);
}

TrainResult train_sampler(const TrainConfig& cfg, TrajectorySampler& model, GridGenerator frozen,
                          const std::vector<GridSample>& train, const std::vector<GridSample>& val) {
  if (frozen.is_empty()) throw Error(ErrorCode::config, "sampler training needs a trained grid generator");
  cfg.validate();
  if (cfg.max_epochs == 0) return {};
  if (train.empty()) throw Error(ErrorCode::config, "no training samples");
  if (frozen->config().future_steps != model->config().future_steps ||
      frozen->config().grid_size != model->config().grid_size) {
    throw Error(ErrorCode::config, "sampler and grid generator disagree on t_f or grid size");
  }
  torch::manual_seed(cfg.seed);
  std::mt19937_64 rng(cfg.seed);
  frozen->eval();
  for (auto& p : frozen->parameters()) p.set_requires_grad(false);

  torch::Tensor train_probs;
  if (!cfg.augment_rotation) train_probs = precompute_probabilities(frozen, train, cfg.batch_size);
  const auto train_gt = future_cells(train);
  torch::Tensor val_probs, val_gt;
  if (!val.empty()) {
    val_probs = precompute_probabilities(frozen, val, cfg.batch_size);
    val_gt = future_cells(val);
  }

  torch::optim::Adam opt(model->parameters(),
                         torch::optim::AdamOptions(cfg.learning_rate).betas({cfg.adam_beta1, 0.999}));
  LoopHooks hooks;
  hooks.train_batch = [&](const std::vector<std::size_t>& idx) {
    torch::Tensor probs, gt;
    if (cfg.augment_rotation) {
      const auto batch_samples = gather(train, idx, true, rng);
      probs = precompute_probabilities(frozen, batch_samples, cfg.batch_size);
      gt = future_cells(batch_samples);
    } else {
      const auto rows = index_tensor(idx);
      probs = train_probs.index_select(0, rows);
      gt = train_gt.index_select(0, rows);
    }
    opt.zero_grad();
    auto loss = variety_loss(model->forward(probs), gt);
    loss.backward();
    opt.step();
    return loss.item<double>();
  };
  hooks.eval_loss = [&] {
    torch::NoGradGuard no_grad;
    double sum = 0.0;
    for (const auto& batch : make_batches(val.size(), cfg.batch_size, nullptr)) {
      const auto rows = index_tensor(batch);
      sum += variety_loss(model->forward(val_probs.index_select(0, rows)), val_gt.index_select(0, rows)).item<double>() *
             batch.size();
    }
    return sum / static_cast<double>(val.size());
  };
  hooks.save_best = [&](const std::filesystem::path& p) { save_sampler(p, model); };
  return run_epochs(cfg, *model, opt, train.size(), !val.empty(), rng, hooks, "sampler");
}

double overfit_probe(GridGenerator& gridgen, TrajectorySampler& sampler, const std::vector<GridSample>& samples,
                     const OverfitBudget& budget) {
  if (samples.empty() || samples.size() > 8) throw Error(ErrorCode::config, "overfit probe takes 1 to 8 samples");
  torch::manual_seed(budget.seed);
  const auto batch = collate(samples);

  if (budget.gridgen_iterations > 0) {
    gridgen->train();
    torch::optim::Adam opt(gridgen->parameters(),
                           torch::optim::AdamOptions(budget.gridgen_learning_rate).betas({0.5, 0.999}));
    const double weight = gridgen->config().positive_class_weight;
    for (int it = 0; it < budget.gridgen_iterations; ++it) {
      opt.zero_grad();
      auto loss = grid_loss(gridgen->forward(batch.past, batch.scene), batch.target, weight);
      loss.backward();
      opt.step();
    }
  }
  gridgen->eval();
  const auto probs = precompute_probabilities(gridgen, samples, static_cast<int>(samples.size()));

  if (budget.sampler_iterations > 0) {
    sampler->train();
    torch::optim::Adam opt(sampler->parameters(),
                           torch::optim::AdamOptions(budget.sampler_learning_rate).betas({0.9, 0.999}));
    for (int it = 0; it < budget.sampler_iterations; ++it) {
      opt.zero_grad();
      auto loss = variety_loss(sampler->forward(probs), batch.future_cells);
      loss.backward();
      opt.step();
    }
  }
  sampler->eval();

  torch::NoGradGuard no_grad;
  const auto pred = sampler->forward(probs);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto world = to_world(to_trajectory_set(pred[static_cast<std::int64_t>(i)]), samples[i]);
    sum += made(future_world(samples[i]), world);
  }
  return sum / static_cast<double>(samples.size());
}

}  // namespace trajgrid
