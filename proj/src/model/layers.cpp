#include "trajgrid/model/layers.hpp"

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

void init_one(torch::nn::Module& m, double std) {
  const bool is_weighted = m.as<torch::nn::Conv2d>() || m.as<torch::nn::ConvTranspose2d>() ||
                           m.as<torch::nn::Linear>();
  if (is_weighted) {
    for (auto& p : m.named_parameters(/*recurse=*/false)) {
      if (p.key() == "weight") p.value().normal_(0.0, std);
      if (p.key() == "bias") p.value().zero_();
    }
  } else if (m.as<torch::nn::BatchNorm2d>()) {
    for (auto& p : m.named_parameters(false)) {
      if (p.key() == "weight") p.value().normal_(1.0, std);
      if (p.key() == "bias") p.value().zero_();
    }
  }
}

}  // namespace

// Does not require the module to be held by a shared_ptr, so it is safe inside constructors.
void init_weights(torch::nn::Module& module, double std) {
  torch::NoGradGuard no_grad;
  init_one(module, std);
  for (auto& m : module.modules(/*include_self=*/false)) init_one(*m, std);
}

ConvLSTMCellImpl::ConvLSTMCellImpl(std::int64_t input_channels, std::int64_t hidden_channels, std::int64_t kernel)
    : hidden_channels_(hidden_channels) {
  if (input_channels < 1 || hidden_channels < 1 || kernel < 1 || kernel % 2 == 0) {
    throw Error(ErrorCode::config, "ConvLSTM needs positive channel counts and an odd kernel");
  }
  gates = register_module(
      "gates", torch::nn::Conv2d(torch::nn::Conv2dOptions(input_channels + hidden_channels, 4 * hidden_channels, kernel)
                                     .padding(kernel / 2)
                                     .bias(true)));
}

ConvLSTMState ConvLSTMCellImpl::initial_state(const torch::Tensor& input) const {
  auto zeros = torch::zeros({input.size(0), hidden_channels_, input.size(2), input.size(3)}, input.options());
  return {zeros, zeros.clone()};
}

ConvLSTMState ConvLSTMCellImpl::forward(const torch::Tensor& input, const ConvLSTMState& state) {
  auto z = gates->forward(torch::cat({input, state.hidden}, 1));
  auto chunks = z.chunk(4, 1);
  auto in_gate = torch::sigmoid(chunks[0]);
  auto forget_gate = torch::sigmoid(chunks[1]);
  auto out_gate = torch::sigmoid(chunks[2]);
  auto candidate = torch::tanh(chunks[3]);
  auto cell = forget_gate * state.cell + in_gate * candidate;
  auto hidden = out_gate * torch::tanh(cell);
  return {hidden, cell};
}

}  // namespace trajgrid
