#include "trajgrid/metrics/metrics.hpp"

#include <cmath>
#include <limits>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

void check_lengths(std::span<const Vec2> gt, const TrajectorySet& pred) {
  if (gt.empty()) throw Error(ErrorCode::length_mismatch, "ground truth is empty");
  if (pred.trajectories.empty()) throw Error(ErrorCode::length_mismatch, "prediction set is empty");
  for (const auto& t : pred.trajectories) {
    if (t.size() != gt.size()) {
      throw Error(ErrorCode::length_mismatch, "prediction has " + std::to_string(t.size()) + " points, ground truth " +
                                                  std::to_string(gt.size()));
    }
  }
}

}  // namespace

double made(std::span<const Vec2> gt, const TrajectorySet& pred) {
  check_lengths(gt, pred);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& traj : pred.trajectories) {
    double sum = 0.0;
    for (std::size_t t = 0; t < gt.size(); ++t) sum += distance(gt[t], traj[t]);
    best = std::min(best, sum / static_cast<double>(gt.size()));
  }
  return best;
}

double mfde(std::span<const Vec2> gt, const TrajectorySet& pred) {
  check_lengths(gt, pred);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& traj : pred.trajectories) best = std::min(best, distance(gt.back(), traj.back()));
  return best;
}

void CSAccumulator::add_point(Vec2 p, const SemanticLabelMap& labels) {
  const double fx = std::floor(p.x);
  const double fy = std::floor(p.y);
  if (!std::isfinite(fx) || !std::isfinite(fy) || fx < 0 || fy < 0 || fx >= labels.width || fy >= labels.height) {
    ++counts_[3];
    return;
  }
  ++counts_[static_cast<std::size_t>(labels.at(static_cast<int>(fx), static_cast<int>(fy)))];
}

void CSAccumulator::add(const TrajectorySet& world, const SemanticLabelMap& labels) {
  if (world.frame != CoordinateFrame::world_pixels) throw Error(ErrorCode::spec, "CS needs world-pixel trajectories");
  for (const auto& traj : world.trajectories)
    for (const auto& p : traj) add_point(p, labels);
}

void CSAccumulator::merge(const CSAccumulator& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::uint64_t CSAccumulator::total() const { return counts_[0] + counts_[1] + counts_[2] + counts_[3]; }

CSReport CSAccumulator::report() const {
  CSReport r;
  r.points = total();
  if (r.points == 0) return r;
  const double scale = 100.0 / static_cast<double>(r.points);
  r.pct_path = counts_[0] * scale;
  r.pct_terrain = counts_[1] * scale;
  r.pct_obstacle = counts_[2] * scale;
  r.pct_out_of_image = counts_[3] * scale;
  return r;
}

CSAccumulator cs_accumulate(const TrajectorySet& world, const SemanticLabelMap& labels, CSAccumulator acc) {
  acc.add(world, labels);
  return acc;
}

void ObstacleFreeCounter::add(const TrajectorySet& world, const SemanticLabelMap& labels) {
  CSAccumulator acc;
  acc.add(world, labels);
  ++sequences_;
  if (acc.count(SemanticClass::obstacle) == 0) ++avoiding_;
}

void ObstacleFreeCounter::merge(const ObstacleFreeCounter& other) {
  sequences_ += other.sequences_;
  avoiding_ += other.avoiding_;
}

double ObstacleFreeCounter::rate() const {
  return sequences_ == 0 ? 0.0 : 100.0 * static_cast<double>(avoiding_) / static_cast<double>(sequences_);
}

double obstacle_free_rate(std::span<const LabelledPrediction> sequences) {
  ObstacleFreeCounter counter;
  for (const auto& s : sequences) counter.add(*s.world, *s.labels);
  return counter.rate();
}

}  // namespace trajgrid
