#pragma once

#include <torch/torch.h>

#include <tuple>

namespace trajgrid {

/// Normal(0, std) for conv / linear weights, Normal(1, std) for batch-norm scales, zero biases.
void init_weights(torch::nn::Module& module, double std);

struct ConvLSTMState {
  torch::Tensor hidden;
  torch::Tensor cell;
};

/// Convolutional LSTM cell: all four gates from one "same"-padded convolution over [x, h].
class ConvLSTMCellImpl : public torch::nn::Module {
 public:
  ConvLSTMCellImpl(std::int64_t input_channels, std::int64_t hidden_channels, std::int64_t kernel);

  ConvLSTMState forward(const torch::Tensor& input, const ConvLSTMState& state);
  ConvLSTMState initial_state(const torch::Tensor& input) const;

  std::int64_t hidden_channels() const { return hidden_channels_; }
  torch::nn::Conv2d gates{nullptr};

 private:
  std::int64_t hidden_channels_;
};
TORCH_MODULE(ConvLSTMCell);

}  // namespace trajgrid
