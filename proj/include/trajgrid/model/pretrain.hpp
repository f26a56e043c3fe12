#pragma once

#include <torch/torch.h>

#include <cstdint>
#include <vector>

#include "trajgrid/model/encoders.hpp"

namespace trajgrid {

struct SegmentationExample {
  torch::Tensor image;   // (3, H, W) float in [0, 1]
  torch::Tensor labels;  // (H, W) int64 class indices
};

struct PretrainOptions {
  int n_classes = 6;
  int steps = 200;
  int batch_size = 4;
  double learning_rate = 2e-3;
  std::uint64_t seed = 0;
};

/// Temporary 1x1 classification head on top of the scene encoder.
torch::nn::Conv2d make_segmentation_head(const ResNetEncoder& encoder, int n_classes);

/// Minimises per-pixel cross-entropy through a temporary 1x1 head. The encoder is trained in
/// place; the head is handed back only for diagnostics and is not part of the encoder. Zero steps
/// leave the encoder untouched. Throws Error(config) when an image and its label map differ in
/// resolution.
torch::nn::Conv2d pretrain_scene_encoder(ResNetEncoder& encoder, const std::vector<SegmentationExample>& data,
                            const PretrainOptions& options);

/// Fraction of pixels where argmax(head(encoder(image))) equals the label.
double segmentation_accuracy(ResNetEncoder& encoder, torch::nn::Conv2d& head,
                             const std::vector<SegmentationExample>& data);

}  // namespace trajgrid
