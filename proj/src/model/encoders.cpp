#include "trajgrid/model/encoders.hpp"

#include <algorithm>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace nn = torch::nn;

UNetEncoderImpl::UNetEncoderImpl(const UNetOptions& options) : options_(options) {
  const int b = options.blocks;
  if (b < 2 || options.in_channels < 1 || options.out_channels < 1 || options.base_channels < 1) {
    throw Error(ErrorCode::config, "U-Net needs at least two levels and positive channel counts");
  }
  std::vector<std::int64_t> width(b);
  for (int i = 0; i < b; ++i) width[i] = options.base_channels << std::min(i, 3);

  for (int i = 0; i < b; ++i) {
    const auto in = i == 0 ? options.in_channels : width[i - 1];
    const bool norm = i > 0 && i < b - 1;
    down_.push_back(register_module("down" + std::to_string(i),
                                    nn::Conv2d(nn::Conv2dOptions(in, width[i], 4).stride(2).padding(1).bias(!norm))));
    down_norm_.push_back(norm ? register_module("down_norm" + std::to_string(i), nn::BatchNorm2d(width[i]))
                              : nn::BatchNorm2d(nullptr));
  }
  // up_[j] undoes down_[j]; stored innermost-first.
  for (int j = b - 1; j >= 0; --j) {
    const auto in = j == b - 1 ? width[j] : 2 * width[j];
    const auto out = j > 0 ? width[j - 1] : options.out_channels;
    const bool norm = j > 0;
    up_.push_back(register_module(
        "up" + std::to_string(j),
        nn::ConvTranspose2d(nn::ConvTranspose2dOptions(in, out, 4).stride(2).padding(1).bias(!norm))));
    up_norm_.push_back(norm ? register_module("up_norm" + std::to_string(j), nn::BatchNorm2d(out))
                            : nn::BatchNorm2d(nullptr));
    up_dropout_.push_back(j > 0 && j < b - 1 && j >= b - 3);
  }
}

torch::Tensor UNetEncoderImpl::forward(const torch::Tensor& x) {
  const int b = options_.blocks;
  if (x.size(2) % (std::int64_t{1} << b) != 0 || x.size(3) % (std::int64_t{1} << b) != 0) {
    throw Error(ErrorCode::config, "U-Net input size must be divisible by 2^" + std::to_string(b));
  }
  std::vector<torch::Tensor> skips;
  auto h = x;
  for (int i = 0; i < b; ++i) {
    if (i > 0) h = torch::leaky_relu(h, options_.leaky_slope);
    h = down_[i]->forward(h);
    if (!down_norm_[i].is_empty()) h = down_norm_[i]->forward(h);
    skips.push_back(h);
  }
  auto u = skips.back();
  for (int k = 0; k < b; ++k) {
    const int j = b - 1 - k;
    u = up_[k]->forward(torch::relu(u));
    if (!up_norm_[k].is_empty()) u = up_norm_[k]->forward(u);
    if (up_dropout_[k]) u = torch::dropout(u, options_.dropout, is_training());
    if (j > 0) u = torch::cat({u, skips[j - 1]}, 1);
  }
  return u;
}

ResidualBlockImpl::ResidualBlockImpl(std::int64_t channels) {
  branch = register_module(
      "branch", nn::Sequential(nn::Conv2d(nn::Conv2dOptions(channels, channels, 3).padding(1).bias(false)),
                               nn::BatchNorm2d(channels), nn::ReLU(),
                               nn::Conv2d(nn::Conv2dOptions(channels, channels, 3).padding(1).bias(false)),
                               nn::BatchNorm2d(channels)));
}

torch::Tensor ResidualBlockImpl::forward(const torch::Tensor& x) { return x + branch->forward(x); }

ResNetEncoderImpl::ResNetEncoderImpl(const ResNetOptions& options) : options_(options) {
  if (options.blocks < 0 || options.downsamplings < 1 || options.base_channels < 1 || options.out_channels < 1) {
    throw Error(ErrorCode::config, "invalid ResNet encoder options");
  }
  const auto base = options.base_channels;
  stem = register_module("stem", nn::Sequential(nn::Conv2d(nn::Conv2dOptions(options.in_channels, base, 7).padding(3).bias(false)),
                                                nn::BatchNorm2d(base), nn::ReLU()));
  down = register_module("down", nn::Sequential());
  auto c = base;
  for (int i = 0; i < options.downsamplings; ++i) {
    down->push_back(nn::Conv2d(nn::Conv2dOptions(c, 2 * c, 4).stride(2).padding(1).bias(false)));
    down->push_back(nn::BatchNorm2d(2 * c));
    down->push_back(nn::LeakyReLU(nn::LeakyReLUOptions().negative_slope(options.leaky_slope)));
    c *= 2;
  }
  residual = register_module("residual", nn::Sequential());
  for (int i = 0; i < options.blocks; ++i) residual->push_back(ResidualBlock(c));
  up = register_module("up", nn::Sequential());
  for (int i = 0; i < options.downsamplings; ++i) {
    up->push_back(nn::ConvTranspose2d(nn::ConvTranspose2dOptions(c, c / 2, 4).stride(2).padding(1).bias(false)));
    up->push_back(nn::BatchNorm2d(c / 2));
    up->push_back(nn::ReLU());
    c /= 2;
  }
  project = register_module("project", nn::Conv2d(nn::Conv2dOptions(c, options.out_channels, 1)));
}

torch::Tensor ResNetEncoderImpl::forward(const torch::Tensor& x) {
  const auto factor = std::int64_t{1} << options_.downsamplings;
  if (x.size(2) % factor != 0 || x.size(3) % factor != 0) {
    throw Error(ErrorCode::config, "ResNet input size must be divisible by 2^" + std::to_string(options_.downsamplings));
  }
  auto h = stem->forward(x);
  h = down->forward(h);
  if (residual->size() > 0) h = residual->forward(h);
  h = up->forward(h);
  return project->forward(h);
}

}  // namespace trajgrid
