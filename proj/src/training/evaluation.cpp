#include "trajgrid/training/evaluation.hpp"

#include "trajgrid/core/error.hpp"
#include "trajgrid/metrics/metrics.hpp"
#include "trajgrid/training/trainer.hpp"

namespace trajgrid {

std::vector<TrajectorySet> predict(GridGenerator& gridgen, TrajectorySampler& sampler,
                                   const std::vector<GridSample>& samples, int batch_size) {
  std::vector<TrajectorySet> out;
  if (samples.empty()) return out;
  torch::NoGradGuard no_grad;
  sampler->eval();
  const auto probs = precompute_probabilities(gridgen, samples, batch_size);
  out.reserve(samples.size());
  for (std::int64_t start = 0; start < probs.size(0); start += batch_size) {
    const auto stop = std::min<std::int64_t>(probs.size(0), start + batch_size);
    const auto pred = sampler->forward(probs.slice(0, start, stop));
    for (std::int64_t i = start; i < stop; ++i) {
      out.push_back(to_world(to_trajectory_set(pred[i - start]), samples[static_cast<std::size_t>(i)]));
    }
  }
  return out;
}

std::vector<TrajectorySet> ground_truth_predictions(const std::vector<GridSample>& samples) {
  std::vector<TrajectorySet> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({CoordinateFrame::world_pixels, {future_world(s)}});
  return out;
}

MetricsReport evaluate_predictions(const std::vector<GridSample>& samples, const std::vector<TrajectorySet>& preds,
                                   const LabelLibrary& labels) {
  if (samples.size() != preds.size()) throw Error(ErrorCode::length_mismatch, "one prediction set per sample required");
  MetricsReport report;
  CSAccumulator cs;
  ObstacleFreeCounter free_counter;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto gt = future_world(samples[i]);
    report.made_px += made(gt, preds[i]);
    report.mfde_px += mfde(gt, preds[i]);
    report.k = static_cast<int>(preds[i].size());
    if (!labels.empty()) {
      auto it = labels.find(samples[i].meta.scene_id);
      if (it == labels.end()) {
        throw Error(ErrorCode::missing_scene, "no label map for scene '" + samples[i].meta.scene_id + "'");
      }
      cs.add(preds[i], it->second);
      free_counter.add(preds[i], it->second);
    }
  }
  report.samples = samples.size();
  if (!samples.empty()) {
    report.made_px /= static_cast<double>(samples.size());
    report.mfde_px /= static_cast<double>(samples.size());
  }
  report.cs = cs.report();
  report.obstacle_free_pct = free_counter.rate();
  return report;
}

}  // namespace trajgrid
