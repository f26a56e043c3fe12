#pragma once

#include <filesystem>
#include <vector>

#include "trajgrid/core/sample.hpp"

namespace trajgrid {

/// Sample stores are single files holding stacked grids plus a JSON metadata block.
/// All samples in a store share one geometry and one (t_h, t_f).
void save_samples(const std::filesystem::path& path, const std::vector<GridSample>& samples);
std::vector<GridSample> load_samples(const std::filesystem::path& path);

/// Stacks per-sample tensors into a batch: past (B, t_h, N, N) float, scene (B, 3, N, N),
/// target (B, t_f, N, N) bool, future_cells (B, t_f, 2) agent-frame grid units.
struct SampleBatch {
  torch::Tensor past;
  torch::Tensor scene;
  torch::Tensor target;
  torch::Tensor future_cells;
};

SampleBatch collate(const std::vector<const GridSample*>& samples);
SampleBatch collate(const std::vector<GridSample>& samples);

}  // namespace trajgrid
