#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trajgrid/core/geometry.hpp"

namespace trajgrid {

/// One row of a Stanford Drone Dataset annotation file.
struct AnnotationRow {
  std::int64_t track_id = 0;
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  std::int64_t frame = 0;
  bool lost = false;
  bool occluded = false;
  bool generated = false;
  std::string label;

  Vec2 center() const { return {(xmin + xmax) / 2.0, (ymin + ymax) / 2.0}; }
};

/// Parses whitespace-separated rows:
///   track_id xmin ymin xmax ymax frame lost occluded generated "label"
/// Blank lines are skipped. Throws ParseError with the 1-based line number.
std::vector<AnnotationRow> parse_annotations(std::istream& in);

void write_annotations(std::ostream& out, const std::vector<AnnotationRow>& rows);

/// Groups rows into trajectories of bounding-box centres. Lost rows are dropped and a track
/// is split wherever its retained frames skip a step of the annotation stride; split segments
/// get ids "<track>#<k>". `annotation_stride` <= 0 infers the stride per track as the smallest
/// positive frame gap over all of its rows (lost rows included).
std::vector<Trajectory> build_tracks(const std::vector<AnnotationRow>& rows, std::int64_t annotation_stride = 0);

}  // namespace trajgrid
