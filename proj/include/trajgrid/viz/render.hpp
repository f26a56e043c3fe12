#pragma once

#include <torch/torch.h>

#include <array>

#include "trajgrid/core/image.hpp"
#include "trajgrid/core/sample.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

namespace overlay_colors {
inline constexpr Rgb past{255, 255, 255};
inline constexpr Rgb ground_truth{0, 200, 0};
/// Candidate k uses predictions[k % 5]: light blue, dark blue, black, red, magenta.
inline constexpr std::array<Rgb, 5> predictions{{{135, 206, 250}, {0, 0, 160}, {0, 0, 0}, {255, 0, 0}, {255, 0, 255}}};
}  // namespace overlay_colors

/// Scene crop with past (white), ground-truth future (green) and candidates drawn on top.
/// The image is (N * pixels_per_cell) square; `pred` may be in agent cells or world pixels.
RgbImage render_overlay(const GridSample& sample, const TrajectorySet& pred, int pixels_per_cell = 1);

/// Perceptually uniform colormap (viridis), 0 -> dark purple, 1 -> yellow.
Rgb viridis(double t);

/// One panel per step of a (T, N, N) probability sequence, laid out `columns` wide with a
/// one-pixel separator, all panels on the sequence's shared [min, max] colour scale.
RgbImage render_heatmaps(const torch::Tensor& probs, int pixels_per_cell = 1, int columns = 4);

}  // namespace trajgrid
