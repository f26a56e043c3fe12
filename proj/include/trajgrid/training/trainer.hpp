#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "trajgrid/core/sample.hpp"
#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

enum class Stage { gridgen, sampler };

struct TrainConfig {
  Stage stage = Stage::gridgen;
  double learning_rate = 2e-4;
  double adam_beta1 = 0.5;
  int batch_size = 16;
  int max_epochs = 20;
  int scheduler_patience = 4;
  double scheduler_factor = 0.5;
  bool augment_rotation = true;
  std::uint64_t seed = 0;
  std::filesystem::path run_dir;  // empty: keep everything in memory
  bool verbose = false;

  void validate() const;
};

void to_json(nlohmann::json& j, const TrainConfig& c);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
  double learning_rate = 0;
};

struct TrainResult {
  std::vector<EpochRecord> curve;
  int best_epoch = 0;  // 0 when no epoch ran
  double best_val_loss = 0;
};

/// Stage 1: weighted cross-entropy on the target grids. The best-validation weights are
/// restored into `model` on return (and written to run_dir/gridgen_best.pt when run_dir is set).
TrainResult train_gridgen(const TrainConfig& cfg, GridGenerator& model, const std::vector<GridSample>& train,
                          const std::vector<GridSample>& val);

/// Stage 2: best-of-K ADE on a frozen stage-1 model. Throws Error(config) if `frozen` is empty.
TrainResult train_sampler(const TrainConfig& cfg, TrajectorySampler& model, GridGenerator frozen,
                          const std::vector<GridSample>& train, const std::vector<GridSample>& val);

/// Stage 1 occupancy probabilities (M, t_f, N, N) for a set of samples, eval mode, no grad.
torch::Tensor precompute_probabilities(GridGenerator& gridgen, const std::vector<GridSample>& samples,
                                       int batch_size = 16);

void write_loss_curve(const std::filesystem::path& path, const std::vector<EpochRecord>& curve);

struct OverfitBudget {
  int gridgen_iterations = 200;
  int sampler_iterations = 300;
  double gridgen_learning_rate = 2e-3;
  double sampler_learning_rate = 1e-3;
  std::uint64_t seed = 0;
};

/// Trains both stages full-batch on at most 8 samples and returns their training-set mADE in pixels.
double overfit_probe(GridGenerator& gridgen, TrajectorySampler& sampler, const std::vector<GridSample>& samples,
                     const OverfitBudget& budget);

}  // namespace trajgrid
