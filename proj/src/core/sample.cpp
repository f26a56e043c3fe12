#include "trajgrid/core/sample.hpp"

#include <cmath>

#include "trajgrid/core/raster.hpp"

namespace trajgrid {

torch::Tensor rotate_scene_grid(const torch::Tensor& grid, double degrees) {
  const auto in = grid.to(torch::kFloat).contiguous();
  const auto channels = in.size(0);
  const auto n = in.size(1);
  auto out = torch::zeros_like(in);
  auto src = in.accessor<float, 3>();
  auto dst = out.accessor<float, 3>();
  const double half = static_cast<double>(n) / 2.0;
  for (std::int64_t r = 0; r < n; ++r) {
    for (std::int64_t c = 0; c < n; ++c) {
      // Cell centre in cell units relative to the grid centre, pulled back by the inverse rotation.
      const Vec2 q = rotate(Vec2{c - half + 0.5, r - half + 0.5}, -degrees);
      const double u = q.x + half - 0.5;
      const double v = q.y + half - 0.5;
      const double u0 = std::floor(u);
      const double v0 = std::floor(v);
      const double fu = u - u0;
      const double fv = v - v0;
      for (int dy = 0; dy <= 1; ++dy) {
        for (int dx = 0; dx <= 1; ++dx) {
          const double w = (dx ? fu : 1.0 - fu) * (dy ? fv : 1.0 - fv);
          if (w == 0.0) continue;
          const auto sx = static_cast<std::int64_t>(u0) + dx;
          const auto sy = static_cast<std::int64_t>(v0) + dy;
          if (sx < 0 || sy < 0 || sx >= n || sy >= n) continue;
          for (std::int64_t ch = 0; ch < channels; ++ch) {
            dst[ch][r][c] += static_cast<float>(w * src[ch][sy][sx]);
          }
        }
      }
    }
  }
  return out;
}

GridSample rotate_sample(const GridSample& sample, double degrees) {
  GridSample out = sample;
  for (auto& p : out.past_xy) p = rotate(p, degrees);
  for (auto& p : out.future_xy) p = rotate(p, degrees);
  out.past_grid = rasterize_positions(out.past_xy, out.geometry);
  out.target_grids = rasterize_positions(out.future_xy, out.geometry);
  out.scene_grid = degrees == 0.0 ? sample.scene_grid.clone() : rotate_scene_grid(sample.scene_grid, degrees);
  out.meta.rotation_deg = std::fmod(sample.meta.rotation_deg + degrees, 360.0);
  out.meta.degenerate = !out.target_grids.any().item<bool>();
  return out;
}

namespace {

std::vector<Vec2> agent_to_world(const std::vector<Vec2>& points, const GridSample& sample) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const Vec2 q = sample.meta.rotation_deg != 0.0 ? rotate(p, -sample.meta.rotation_deg) : p;
    out.push_back(q + sample.anchor_world);
  }
  return out;
}

}  // namespace

std::vector<Vec2> future_world(const GridSample& sample) { return agent_to_world(sample.future_xy, sample); }
std::vector<Vec2> past_world(const GridSample& sample) { return agent_to_world(sample.past_xy, sample); }

}  // namespace trajgrid
