#include "trajgrid/core/geometry.hpp"

#include <numbers>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return "CONFIG_ERROR";
    case ErrorCode::parse: return "PARSE_ERROR";
    case ErrorCode::missing_scene: return "MISSING_SCENE";
    case ErrorCode::shape: return "SHAPE_ERROR";
    case ErrorCode::length_mismatch: return "LENGTH_MISMATCH";
    case ErrorCode::palette: return "PALETTE_ERROR";
    case ErrorCode::spec: return "SPEC_ERROR";
    case ErrorCode::io: return "IO_ERROR";
  }
  return "ERROR";
}

void Trajectory::validate() const {
  if (points.empty()) {
    throw Error(ErrorCode::spec, "trajectory " + agent_id + " is empty");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.position.x) || !std::isfinite(p.position.y)) {
      throw Error(ErrorCode::spec, "trajectory " + agent_id + " has a non-finite coordinate");
    }
    if (i > 0 && points[i - 1].frame >= p.frame) {
      throw Error(ErrorCode::spec, "trajectory " + agent_id + " frames are not strictly increasing");
    }
  }
}

std::vector<Vec2> translate(std::span<const Vec2> points, Vec2 offset) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p + offset);
  return out;
}

void GridGeometry::validate() const {
  if (size <= 0 || size % 2 != 0) {
    throw Error(ErrorCode::config, "grid size must be a positive even number, got " + std::to_string(size));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::config, "grid scale must be positive");
  }
}

std::optional<Cell> world_to_cell(Vec2 p, const GridGeometry& geom) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  const Cell c = geom.center();
  const double col = std::floor(p.x / geom.scale) + c.col;
  const double row = std::floor(p.y / geom.scale) + c.row;
  if (col < 0 || row < 0 || col >= geom.size || row >= geom.size) return std::nullopt;
  return Cell{static_cast<int>(row), static_cast<int>(col)};
}

Vec2 cell_center(Cell cell, const GridGeometry& geom) {
  const Cell c = geom.center();
  return {(cell.col - c.col + 0.5) * geom.scale, (cell.row - c.row + 0.5) * geom.scale};
}

Vec2 rotate(Vec2 p, double degrees) {
  double turns = std::fmod(degrees, 360.0);
  if (turns < 0) turns += 360.0;
  double s = 0.0;
  double c = 1.0;
  if (std::fmod(turns, 90.0) == 0.0) {
    switch (static_cast<int>(turns / 90.0)) {
      case 0: c = 1; s = 0; break;
      case 1: c = 0; s = 1; break;
      case 2: c = -1; s = 0; break;
      default: c = 0; s = -1; break;
    }
  } else {
    const double rad = turns * std::numbers::pi / 180.0;
    s = std::sin(rad);
    c = std::cos(rad);
  }
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace trajgrid
