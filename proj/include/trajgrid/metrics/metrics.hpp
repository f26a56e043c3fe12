#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "trajgrid/core/geometry.hpp"
#include "trajgrid/core/semantic.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

/// Minimum over candidates of the mean L2 distance to the ground truth. Throws
/// Error(length_mismatch) when a candidate's length differs from the ground truth's.
double made(std::span<const Vec2> gt, const TrajectorySet& pred);

/// Minimum over candidates of the final-point L2 distance.
double mfde(std::span<const Vec2> gt, const TrajectorySet& pred);

struct CSReport {
  double pct_path = 0;
  double pct_terrain = 0;
  double pct_obstacle = 0;
  double pct_out_of_image = 0;
  std::uint64_t points = 0;
};

/// Correspondence-to-scene counts, micro-averaged over everything added.
class CSAccumulator {
 public:
  /// Floors each world-pixel point to its pixel and counts its category, or out-of-image.
  void add(const TrajectorySet& world, const SemanticLabelMap& labels);
  void add_point(Vec2 world_point, const SemanticLabelMap& labels);
  void merge(const CSAccumulator& other);

  std::uint64_t total() const;
  std::uint64_t count(SemanticClass c) const { return counts_[static_cast<std::size_t>(c)]; }
  std::uint64_t out_of_image() const { return counts_[3]; }
  CSReport report() const;

 private:
  std::array<std::uint64_t, 4> counts_{};
};

CSAccumulator cs_accumulate(const TrajectorySet& world, const SemanticLabelMap& labels, CSAccumulator acc);

/// Sequences whose candidates (all K of them) never touch an obstacle pixel.
class ObstacleFreeCounter {
 public:
  void add(const TrajectorySet& world, const SemanticLabelMap& labels);
  void merge(const ObstacleFreeCounter& other);
  std::uint64_t sequences() const { return sequences_; }
  std::uint64_t avoiding() const { return avoiding_; }
  /// Percentage in [0, 100]; 0 when nothing was added.
  double rate() const;

 private:
  std::uint64_t sequences_ = 0;
  std::uint64_t avoiding_ = 0;
};

struct LabelledPrediction {
  const TrajectorySet* world = nullptr;
  const SemanticLabelMap* labels = nullptr;
};

double obstacle_free_rate(std::span<const LabelledPrediction> sequences);

}  // namespace trajgrid
