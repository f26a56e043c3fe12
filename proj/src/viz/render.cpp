#include "trajgrid/viz/render.hpp"

#include <algorithm>
#include <cmath>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

void fill_cell(RgbImage& img, Cell cell, int ppc, Rgb color) {
  for (int dy = 0; dy < ppc; ++dy)
    for (int dx = 0; dx < ppc; ++dx) img.set(cell.col * ppc + dx, cell.row * ppc + dy, color);
}

// Cell-level Bresenham between two in-grid cells.
void draw_line(RgbImage& img, Cell a, Cell b, int ppc, Rgb color) {
  int x0 = a.col, y0 = a.row;
  const int dx = std::abs(b.col - x0), sx = x0 < b.col ? 1 : -1;
  const int dy = -std::abs(b.row - y0), sy = y0 < b.row ? 1 : -1;
  int err = dx + dy;
  while (true) {
    fill_cell(img, {y0, x0}, ppc, color);
    if (x0 == b.col && y0 == b.row) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void draw_polyline(RgbImage& img, const std::vector<Vec2>& agent_px, const GridGeometry& geom, int ppc, Rgb color) {
  std::optional<Cell> prev;
  for (const auto& p : agent_px) {
    const auto cell = world_to_cell(p, geom);
    if (cell && prev) draw_line(img, *prev, *cell, ppc, color);
    else if (cell) fill_cell(img, *cell, ppc, color);
    prev = cell;
  }
}

}  // namespace

RgbImage render_overlay(const GridSample& sample, const TrajectorySet& pred, int ppc) {
  if (ppc < 1) throw Error(ErrorCode::config, "pixels_per_cell must be positive");
  const auto& geom = sample.geometry;
  const int n = geom.size;
  RgbImage img(n * ppc, n * ppc);
  const auto scene = sample.scene_grid.to(torch::kFloat).contiguous();
  auto acc = scene.accessor<float, 3>();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Rgb px;
      for (int ch = 0; ch < 3; ++ch) {
        px[ch] = static_cast<std::uint8_t>(std::lround(std::clamp(acc[ch][r][c], 0.0f, 1.0f) * 255.0f));
      }
      fill_cell(img, {r, c}, ppc, px);
    }
  }
  const TrajectorySet cells = pred.frame == CoordinateFrame::agent_cells ? pred : to_agent_cells(pred, sample);
  for (std::size_t k = 0; k < cells.trajectories.size(); ++k) {
    std::vector<Vec2> px;
    for (const auto& p : cells.trajectories[k]) px.push_back(p * geom.scale);
    draw_polyline(img, px, geom, ppc, overlay_colors::predictions[k % overlay_colors::predictions.size()]);
  }
  draw_polyline(img, sample.future_xy, geom, ppc, overlay_colors::ground_truth);
  draw_polyline(img, sample.past_xy, geom, ppc, overlay_colors::past);
  return img;
}

Rgb viridis(double t) {
  static constexpr std::array<std::array<double, 3>, 9> stops{{{68, 1, 84},
                                                               {71, 44, 122},
                                                               {59, 81, 139},
                                                               {44, 113, 142},
                                                               {33, 144, 141},
                                                               {39, 173, 129},
                                                               {92, 200, 99},
                                                               {170, 220, 50},
                                                               {253, 231, 37}}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const double pos = t * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), stops.size() - 2);
  const double f = pos - static_cast<double>(i);
  Rgb out;
  for (int c = 0; c < 3; ++c) {
    out[c] = static_cast<std::uint8_t>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  }
  return out;
}

RgbImage render_heatmaps(const torch::Tensor& probs, int ppc, int columns) {
  if (probs.dim() != 3) throw Error(ErrorCode::shape, "heatmaps need a (T, N, N) tensor");
  if (ppc < 1 || columns < 1) throw Error(ErrorCode::config, "pixels_per_cell and columns must be positive");
  const auto p = probs.to(torch::kDouble).contiguous();
  const int steps = static_cast<int>(p.size(0));
  const int n = static_cast<int>(p.size(1));
  const int cols = std::min(columns, std::max(steps, 1));
  const int rows = (steps + cols - 1) / cols;
  const int panel = n * ppc;
  RgbImage img(cols * panel + (cols - 1), rows * panel + (rows - 1), {40, 40, 40});
  const double lo = steps > 0 ? p.min().item<double>() : 0.0;
  const double hi = steps > 0 ? p.max().item<double>() : 0.0;
  const double span = hi - lo;
  auto acc = p.accessor<double, 3>();
  for (int t = 0; t < steps; ++t) {
    const int ox = (t % cols) * (panel + 1);
    const int oy = (t / cols) * (panel + 1);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const Rgb color = viridis(span > 0 ? (acc[t][r][c] - lo) / span : 0.0);
        for (int dy = 0; dy < ppc; ++dy)
          for (int dx = 0; dx < ppc; ++dx) img.set(ox + c * ppc + dx, oy + r * ppc + dy, color);
      }
    }
  }
  return img;
}

}  // namespace trajgrid
