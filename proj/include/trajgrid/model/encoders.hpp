#pragma once

#include <torch/torch.h>

#include <vector>

namespace trajgrid {

struct UNetOptions {
  std::int64_t in_channels = 8;
  std::int64_t out_channels = 10;
  int blocks = 7;            // stride-2 levels; grid size must be divisible by 2^blocks
  std::int64_t base_channels = 64;
  double leaky_slope = 0.2;
  double dropout = 0.5;
};

/// Image-to-image U-Net with skip connections. Every level is a 4x4 stride-2 convolution;
/// the final transposed convolution has no output nonlinearity.
class UNetEncoderImpl : public torch::nn::Module {
 public:
  explicit UNetEncoderImpl(const UNetOptions& options);
  torch::Tensor forward(const torch::Tensor& x);
  /// Spatial size of the innermost feature map for an input of `size` x `size`.
  std::int64_t bottleneck_size(std::int64_t size) const { return size >> options_.blocks; }

 private:
  UNetOptions options_;
  std::vector<torch::nn::Conv2d> down_;
  std::vector<torch::nn::BatchNorm2d> down_norm_;   // empty holder at levels without norm
  std::vector<torch::nn::ConvTranspose2d> up_;
  std::vector<torch::nn::BatchNorm2d> up_norm_;
  std::vector<bool> up_dropout_;
};
TORCH_MODULE(UNetEncoder);

/// conv3x3-BN-ReLU-conv3x3-BN branch added to its input.
class ResidualBlockImpl : public torch::nn::Module {
 public:
  explicit ResidualBlockImpl(std::int64_t channels);
  torch::Tensor forward(const torch::Tensor& x);
  torch::nn::Sequential branch{nullptr};
};
TORCH_MODULE(ResidualBlock);

struct ResNetOptions {
  std::int64_t in_channels = 3;
  std::int64_t out_channels = 10;
  int blocks = 9;
  int downsamplings = 2;
  std::int64_t base_channels = 64;
  double leaky_slope = 0.2;
};

/// Stem, stride-2 downsampling, residual blocks at the bottleneck, transposed-conv upsampling
/// back to the input resolution and a 1x1 projection.
class ResNetEncoderImpl : public torch::nn::Module {
 public:
  explicit ResNetEncoderImpl(const ResNetOptions& options);
  torch::Tensor forward(const torch::Tensor& x);
  std::int64_t out_channels() const { return options_.out_channels; }

  torch::nn::Sequential stem{nullptr};
  torch::nn::Sequential down{nullptr};
  torch::nn::Sequential residual{nullptr};
  torch::nn::Sequential up{nullptr};
  torch::nn::Conv2d project{nullptr};

 private:
  ResNetOptions options_;
};
TORCH_MODULE(ResNetEncoder);

}  // namespace trajgrid
