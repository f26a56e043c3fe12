#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trajgrid/core/geometry.hpp"
#include "trajgrid/core/image.hpp"
#include "trajgrid/core/semantic.hpp"
#include "trajgrid/dataset/annotations.hpp"

namespace trajgrid {

struct PathEdge {
  int from = 0;
  int to = 0;
  double width = 40.0;  // pixels
};

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool contains(Vec2 p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
};

struct Circle {
  Vec2 center;
  double radius = 0;
};

struct ScenePalette {
  Rgb path{190, 190, 182};
  Rgb terrain{84, 132, 60};
  Rgb obstacle{118, 72, 60};
};

/// Procedural scene: a path network drawn over a background with terrain and obstacles.
/// Paint order is background, obstacles, terrain, then paths, so walkable paths always win.
struct SceneSpec {
  int width = 640;
  int height = 640;
  SemanticClass background = SemanticClass::obstacle;
  std::vector<Vec2> nodes;
  std::vector<PathEdge> edges;
  std::vector<Rect> terrain_rects;
  std::vector<Rect> obstacle_rects;
  std::vector<Circle> obstacle_circles;
  double terrain_margin = 0.0;  // terrain verge on each side of every path
  ScenePalette palette;
  double color_noise = 10.0;    // uniform per-pixel intensity noise amplitude
  std::vector<int> spawn_nodes; // when set, agents start at one of these nodes
};

struct AgentSpec {
  double speed_min = 5.0;  // pixels per stride step
  double speed_max = 9.0;
  double jitter_sigma = 1.5;  // lateral Gaussian jitter, pixels
  int min_steps = 20;
  int max_steps = 40;
  std::int64_t stride_frames = 12;
  std::vector<std::string> labels{"Pedestrian"};
};

struct SyntheticScene {
  RgbImage image;
  SemanticLabelMap labels;
  std::vector<Trajectory> trajectories;
};

/// Deterministic for a given (spec, agents, n_agents, seed). Throws Error(spec) on an empty path set.
SyntheticScene generate_synthetic(const SceneSpec& spec, const AgentSpec& agents, int n_agents, std::uint64_t seed);

/// Rasterises the label map of a scene spec (no agents, no colour noise).
SemanticLabelMap render_labels(const SceneSpec& spec);

/// Straight horizontal corridor across the canvas.
SceneSpec straight_corridor(int width = 640, int height = 320, double path_width = 40.0);
/// Stem entering from the bottom and splitting left / right; agents spawn at the stem end.
SceneSpec t_intersection(int size = 640, double path_width = 40.0);
/// Random lattice of corridors with terrain verges, parks and trees on an obstacle background.
SceneSpec corridor_world(std::uint64_t seed, int size = 640);

/// Trajectories as annotation rows with a fixed-size box around each position.
std::vector<AnnotationRow> to_annotations(const std::vector<Trajectory>& trajectories, double box_half = 8.0);

}  // namespace trajgrid
