#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trajgrid {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct TrackPoint {
  std::int64_t frame = 0;
  Vec2 position;
};

/// Time-ordered positions of one agent in world (image pixel) coordinates.
struct Trajectory {
  std::string agent_id;
  std::string label;
  std::vector<TrackPoint> points;

  /// Throws Error(spec) unless frames strictly increase and coordinates are finite.
  void validate() const;
};

template <class Tag>
struct Window {
  std::vector<Vec2> positions;
};

/// t_h positions ending at the anchor time t (last element is the anchor).
using PastWindow = Window<struct PastWindowTag>;
/// t_f positions strictly after the anchor time.
using FutureWindow = Window<struct FutureWindowTag>;

std::vector<Vec2> translate(std::span<const Vec2> points, Vec2 offset);

template <class Tag>
Window<Tag> to_agent_frame(const Window<Tag>& window, Vec2 anchor) {
  return {translate(window.positions, Vec2{-anchor.x, -anchor.y})};
}

template <class Tag>
Window<Tag> from_agent_frame(const Window<Tag>& window, Vec2 anchor) {
  return {translate(window.positions, anchor)};
}

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

/// Square grid centred on the agent. Cell (size/2, size/2) holds agent-frame (0, 0).
struct GridGeometry {
  int size = 128;
  double scale = 10.0;  // world pixels per cell

  Cell center() const { return {size / 2, size / 2}; }
  void validate() const;
  bool operator==(const GridGeometry&) const = default;
};

/// +x maps to +col and +y to +row; std::nullopt when the point is outside the grid.
std::optional<Cell> world_to_cell(Vec2 agent_frame_point, const GridGeometry& geom);

/// Agent-frame coordinates (pixels) of the centre of `cell`.
Vec2 cell_center(Cell cell, const GridGeometry& geom);

/// Counterclockwise rotation of agent-frame coordinates (standard 2-D matrix).
/// Multiples of 90 degrees use exact sine and cosine values.
Vec2 rotate(Vec2 p, double degrees);

}  // namespace trajgrid
