#include "trajgrid/core/raster.hpp"

#include <algorithm>
#include <cmath>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

torch::Tensor rasterize_positions(std::span<const Vec2> points, const GridGeometry& geom) {
  geom.validate();
  const auto n = static_cast<std::int64_t>(geom.size);
  auto grid = torch::zeros({static_cast<std::int64_t>(points.size()), n, n}, torch::kBool);
  auto acc = grid.accessor<bool, 3>();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (auto cell = world_to_cell(points[i], geom)) acc[i][cell->row][cell->col] = true;
  }
  return grid;
}

torch::Tensor rasterize_past(const PastWindow& window, const GridGeometry& geom) {
  return rasterize_positions(window.positions, geom);
}

TargetRaster rasterize_target(const FutureWindow& window, const GridGeometry& geom) {
  TargetRaster out;
  out.grids = rasterize_positions(window.positions, geom);
  out.degenerate = !out.grids.any().item<bool>();
  return out;
}

namespace {

struct Span1D {
  int first = 0;               // first pixel index touched
  std::vector<double> weight;  // overlap length of each touched pixel
};

// Overlap of [lo, hi) with the unit pixels [i, i+1).
Span1D overlap(double lo, double hi) {
  Span1D s;
  s.first = static_cast<int>(std::floor(lo));
  const int last = static_cast<int>(std::ceil(hi)) - 1;
  for (int i = s.first; i <= last; ++i) {
    const double w = std::min<double>(i + 1, hi) - std::max<double>(i, lo);
    s.weight.push_back(std::max(0.0, w));
  }
  return s;
}

}  // namespace

torch::Tensor crop_scene(const RgbImage& scene, Vec2 anchor, const GridGeometry& geom) {
  geom.validate();
  const int n = geom.size;
  const double s = geom.scale;
  const double origin_x = anchor.x - geom.center().col * s;
  const double origin_y = anchor.y - geom.center().row * s;

  std::vector<Span1D> cols(n);
  std::vector<Span1D> rows(n);
  for (int i = 0; i < n; ++i) {
    cols[i] = overlap(origin_x + i * s, origin_x + (i + 1) * s);
    rows[i] = overlap(origin_y + i * s, origin_y + (i + 1) * s);
  }

  auto out = torch::zeros({3, n, n}, torch::kFloat);
  auto acc = out.accessor<float, 3>();
  const double norm = 1.0 / (s * s * 255.0);
  for (int r = 0; r < n; ++r) {
    const auto& ry = rows[r];
    for (int c = 0; c < n; ++c) {
      const auto& cx = cols[c];
      double sum[3] = {0, 0, 0};
      for (std::size_t j = 0; j < ry.weight.size(); ++j) {
        const int y = ry.first + static_cast<int>(j);
        if (y < 0 || y >= scene.height) continue;
        for (std::size_t i = 0; i < cx.weight.size(); ++i) {
          const int x = cx.first + static_cast<int>(i);
          if (x < 0 || x >= scene.width) continue;
          const double w = ry.weight[j] * cx.weight[i];
          for (int ch = 0; ch < 3; ++ch) sum[ch] += w * scene.at(x, y, ch);
        }
      }
      for (int ch = 0; ch < 3; ++ch) {
        acc[ch][r][c] = static_cast<float>(std::clamp(sum[ch] * norm, 0.0, 1.0));
      }
    }
  }
  return out;
}

void SceneLibrary::add(std::string scene_id, RgbImage image) { images_[std::move(scene_id)] = std::move(image); }

const RgbImage& SceneLibrary::get(const std::string& scene_id) const {
  auto it = images_.find(scene_id);
  if (it == images_.end()) throw Error(ErrorCode::missing_scene, "no image for scene '" + scene_id + "'");
  return it->second;
}

}  // namespace trajgrid
