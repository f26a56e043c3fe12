#pragma once

#include <map>
#include <string>
#include <vector>

#include "trajgrid/core/sample.hpp"
#include "trajgrid/core/semantic.hpp"
#include "trajgrid/metrics/report.hpp"
#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

using LabelLibrary = std::map<std::string, SemanticLabelMap>;

/// Runs both stages in eval mode and returns one world-pixel TrajectorySet per sample.
std::vector<TrajectorySet> predict(GridGenerator& gridgen, TrajectorySampler& sampler,
                                   const std::vector<GridSample>& samples, int batch_size = 16);

/// The ground-truth future of each sample as a single-candidate world-pixel set.
std::vector<TrajectorySet> ground_truth_predictions(const std::vector<GridSample>& samples);

/// mADE / mFDE averaged over samples, plus correspondence-to-scene and obstacle-free rate.
/// CS is computed only when `labels` is non-empty; then every sample's scene must be present
/// (Error(missing_scene) otherwise).
MetricsReport evaluate_predictions(const std::vector<GridSample>& samples, const std::vector<TrajectorySet>& preds,
                                   const LabelLibrary& labels);

}  // namespace trajgrid
