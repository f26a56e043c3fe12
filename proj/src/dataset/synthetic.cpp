#include "trajgrid/dataset/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

void paint_rect(SemanticLabelMap& map, const Rect& r, SemanticClass c) {
  const int x0 = std::max(0, static_cast<int>(std::floor(r.x0)));
  const int y0 = std::max(0, static_cast<int>(std::floor(r.y0)));
  const int x1 = std::min(map.width, static_cast<int>(std::ceil(r.x1)));
  const int y1 = std::min(map.height, static_cast<int>(std::ceil(r.y1)));
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      if (r.contains({x + 0.5, y + 0.5})) map.set(x, y, c);
}

void paint_band(SemanticLabelMap& map, Vec2 a, Vec2 b, double radius, SemanticClass c) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)));
  const int x1 = std::min(map.width, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius)) + 1);
  const int y1 = std::min(map.height, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius)) + 1);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      if (segment_distance({x + 0.5, y + 0.5}, a, b) <= radius) map.set(x, y, c);
}

struct Walker {
  int edge = 0;
  int from = 0;  // node the agent walks away from
  double along = 0.0;
};

}  // namespace

SemanticLabelMap render_labels(const SceneSpec& spec) {
  SemanticLabelMap map(spec.width, spec.height, spec.background);
  for (const auto& r : spec.obstacle_rects) paint_rect(map, r, SemanticClass::obstacle);
  for (const auto& c : spec.obstacle_circles) {
    for (int y = 0; y < map.height; ++y)
      for (int x = 0; x < map.width; ++x)
        if (distance({x + 0.5, y + 0.5}, c.center) <= c.radius) map.set(x, y, SemanticClass::obstacle);
  }
  for (const auto& r : spec.terrain_rects) paint_rect(map, r, SemanticClass::terrain);
  if (spec.terrain_margin > 0) {
    for (const auto& e : spec.edges) {
      paint_band(map, spec.nodes[e.from], spec.nodes[e.to], e.width / 2 + spec.terrain_margin, SemanticClass::terrain);
    }
  }
  for (const auto& e : spec.edges) {
    paint_band(map, spec.nodes[e.from], spec.nodes[e.to], e.width / 2, SemanticClass::path);
  }
  return map;
}

SyntheticScene generate_synthetic(const SceneSpec& spec, const AgentSpec& agents, int n_agents, std::uint64_t seed) {
  if (spec.edges.empty()) throw Error(ErrorCode::spec, "scene has no paths");
  for (const auto& e : spec.edges) {
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(spec.nodes.size()) ||
        e.to >= static_cast<int>(spec.nodes.size()) || e.from == e.to || !(e.width > 2.0)) {
      throw Error(ErrorCode::spec, "invalid path edge");
    }
  }
  if (agents.min_steps < 1 || agents.max_steps < agents.min_steps || agents.speed_min < 0 ||
      agents.speed_max < agents.speed_min || agents.labels.empty()) {
    throw Error(ErrorCode::spec, "invalid agent spec");
  }

  std::mt19937_64 rng(seed);
  SyntheticScene out;
  out.labels = render_labels(spec);

  out.image = RgbImage(spec.width, spec.height);
  std::uniform_real_distribution<double> noise(-spec.color_noise, spec.color_noise);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const auto cls = out.labels.at(x, y);
      const Rgb base = cls == SemanticClass::path      ? spec.palette.path
                       : cls == SemanticClass::terrain ? spec.palette.terrain
                                                       : spec.palette.obstacle;
      const double n = noise(rng);
      Rgb px;
      for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(std::clamp(base[c] + n, 0.0, 255.0));
      out.image.set(x, y, px);
    }
  }

  std::vector<std::vector<int>> incident(spec.nodes.size());
  std::vector<double> lengths;
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    incident[spec.edges[i].from].push_back(static_cast<int>(i));
    incident[spec.edges[i].to].push_back(static_cast<int>(i));
    lengths.push_back(distance(spec.nodes[spec.edges[i].from], spec.nodes[spec.edges[i].to]));
  }
  std::discrete_distribution<int> pick_edge(lengths.begin(), lengths.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto other_end = [&](int edge, int node) { return spec.edges[edge].from == node ? spec.edges[edge].to : spec.edges[edge].from; };

  for (int a = 0; a < n_agents; ++a) {
    Walker w;
    if (!spec.spawn_nodes.empty()) {
      const int node = spec.spawn_nodes[std::uniform_int_distribution<std::size_t>(0, spec.spawn_nodes.size() - 1)(rng)];
      const auto& inc = incident.at(node);
      if (inc.empty()) throw Error(ErrorCode::spec, "spawn node has no paths");
      w.edge = inc[std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng)];
      w.from = node;
      w.along = 0.0;
    } else {
      w.edge = pick_edge(rng);
      const bool forward = unit(rng) < 0.5;
      w.from = forward ? spec.edges[w.edge].from : spec.edges[w.edge].to;
      w.along = unit(rng) * lengths[w.edge];
    }
    const double speed = agents.speed_min + unit(rng) * (agents.speed_max - agents.speed_min);
    const int steps = std::uniform_int_distribution<int>(agents.min_steps, agents.max_steps)(rng);
    const auto& label = agents.labels[std::uniform_int_distribution<std::size_t>(0, agents.labels.size() - 1)(rng)];
    const std::int64_t start_frame = agents.stride_frames * std::uniform_int_distribution<std::int64_t>(0, 1000)(rng);

    Trajectory traj;
    traj.agent_id = std::to_string(a);
    traj.label = label;
    for (int k = 0; k < steps; ++k) {
      const auto& e = spec.edges[w.edge];
      const Vec2 p0 = spec.nodes[w.from];
      const Vec2 p1 = spec.nodes[other_end(w.edge, w.from)];
      const Vec2 dir = (p1 - p0) / lengths[w.edge];
      const Vec2 normal{-dir.y, dir.x};
      const double limit = e.width / 2 - 1.0;
      const double offset = std::clamp(gauss(rng) * agents.jitter_sigma, -limit, limit);
      traj.points.push_back({start_frame + k * agents.stride_frames, p0 + dir * w.along + normal * offset});

      w.along += speed;
      bool stopped = false;
      while (w.along > lengths[w.edge]) {
        const double leftover = w.along - lengths[w.edge];
        const int node = other_end(w.edge, w.from);
        std::vector<int> options;
        for (int cand : incident[node])
          if (cand != w.edge) options.push_back(cand);
        if (options.empty()) {
          stopped = true;
          break;
        }
        w.edge = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        w.from = node;
        w.along = leftover;
      }
      if (stopped) break;
    }

    for (const auto& p : traj.points) {
      const int x = static_cast<int>(std::floor(p.position.x));
      const int y = static_cast<int>(std::floor(p.position.y));
      if (out.labels.contains(x, y) && out.labels.at(x, y) == SemanticClass::obstacle) {
        throw Error(ErrorCode::spec, "generated point on an obstacle; path narrower than jitter allows");
      }
    }
    out.trajectories.push_back(std::move(traj));
  }
  return out;
}

SceneSpec straight_corridor(int width, int height, double path_width) {
  SceneSpec s;
  s.width = width;
  s.height = height;
  s.background = SemanticClass::terrain;
  s.nodes = {{2.0, height / 2.0}, {width - 2.0, height / 2.0}};
  s.edges = {{0, 1, path_width}};
  return s;
}

SceneSpec t_intersection(int size, double path_width) {
  SceneSpec s;
  s.width = size;
  s.height = size;
  s.background = SemanticClass::obstacle;
  const double c = size / 2.0;
  s.nodes = {{c, size - 2.0}, {c, c}, {2.0, c}, {size - 2.0, c}};
  s.edges = {{0, 1, path_width}, {1, 2, path_width}, {1, 3, path_width}};
  s.spawn_nodes = {0};
  return s;
}

SceneSpec corridor_world(std::uint64_t seed, int size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SceneSpec s;
  s.width = size;
  s.height = size;
  s.background = SemanticClass::obstacle;
  s.terrain_margin = 10.0;

  // Three vertical and three horizontal corridors, jittered inside equal bands.
  constexpr int lines = 3;
  const double band = static_cast<double>(size) / lines;
  std::vector<double> xs, ys, widths_v, widths_h;
  for (int i = 0; i < lines; ++i) {
    xs.push_back(band * i + band * (0.3 + 0.4 * unit(rng)));
    ys.push_back(band * i + band * (0.3 + 0.4 * unit(rng)));
    widths_v.push_back(40.0 + 12.0 * unit(rng));
    widths_h.push_back(40.0 + 12.0 * unit(rng));
  }
  const double lo = 2.0;
  const double hi = size - 2.0;
  std::vector<double> gx{lo}, gy{lo};
  gx.insert(gx.end(), xs.begin(), xs.end());
  gy.insert(gy.end(), ys.begin(), ys.end());
  gx.push_back(hi);
  gy.push_back(hi);

  // Node (i, j) sits at (gx[i], gy[j]); only lattice points on a corridor are used.
  auto node_id = [&](int i, int j) { return j * static_cast<int>(gx.size()) + i; };
  for (double y : gy)
    for (double x : gx) s.nodes.push_back({x, y});

  const int nx = static_cast<int>(gx.size());
  const int ny = static_cast<int>(gy.size());
  // Horizontal corridors run along rows j = 1..lines, vertical ones along columns i = 1..lines.
  for (int j = 1; j <= lines; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const bool interior = i > 0 && i + 1 < nx - 1;
      if (interior && unit(rng) < 0.2) continue;
      s.edges.push_back({node_id(i, j), node_id(i + 1, j), widths_h[j - 1]});
    }
  }
  for (int i = 1; i <= lines; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      const bool interior = j > 0 && j + 1 < ny - 1;
      if (interior && unit(rng) < 0.2) continue;
      s.edges.push_back({node_id(i, j), node_id(i, j + 1), widths_v[i - 1]});
    }
  }

  // A couple of parks with trees, carved out of the building blocks.
  const int parks = 2;
  for (int p = 0; p < parks; ++p) {
    const double w = 60 + 60 * unit(rng);
    const double h = 60 + 60 * unit(rng);
    const double x0 = unit(rng) * (size - w);
    const double y0 = unit(rng) * (size - h);
    s.terrain_rects.push_back({x0, y0, x0 + w, y0 + h});
  }
  return s;
}

std::vector<AnnotationRow> to_annotations(const std::vector<Trajectory>& trajectories, double box_half) {
  std::vector<AnnotationRow> rows;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    for (const auto& p : trajectories[i].points) {
      AnnotationRow r;
      r.track_id = static_cast<std::int64_t>(i);
      r.xmin = p.position.x - box_half;
      r.xmax = p.position.x + box_half;
      r.ymin = p.position.y - box_half;
      r.ymax = p.position.y + box_half;
      r.frame = p.frame;
      r.label = trajectories[i].label;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace trajgrid
