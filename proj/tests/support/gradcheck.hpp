#pragma once

// Autograd versus central finite differences at 64-bit precision on tiny instances.

#include <torch/torch.h>

#include <functional>
#include <vector>

#include "support/oracles.hpp"
#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/layers.hpp"

namespace trajgrid::testing {

/// Max relative error between autograd and finite differences of `loss` over every element of `leaves`.
inline double gradient_error(const std::function<torch::Tensor()>& loss, std::vector<torch::Tensor> leaves,
                             double step = 1e-6) {
  for (auto& l : leaves) {
    if (l.grad().defined()) l.grad().zero_();
  }
  loss().backward();
  double worst = 0.0;
  torch::NoGradGuard no_grad;
  for (auto& leaf : leaves) {
    const auto analytic = leaf.grad().clone();
    auto flat = leaf.view({-1});
    auto numeric = torch::zeros_like(flat);
    for (std::int64_t i = 0; i < flat.numel(); ++i) {
      const double v = flat[i].item<double>();
      flat[i] = v + step;
      const double up = loss().item<double>();
      flat[i] = v - step;
      const double down = loss().item<double>();
      flat[i] = v;
      numeric[i] = (up - down) / (2 * step);
    }
    worst = std::max(worst, max_relative_error(analytic.view({-1}), numeric));
  }
  return worst;
}

/// ConvLSTM cell with N = 8, hidden = 2, kernel = 3, unrolled two steps from a random state.
inline double convlstm_gradient_error(std::uint64_t seed) {
  torch::manual_seed(seed);
  ConvLSTMCell cell(3, 2, 3);
  cell->to(torch::kDouble);
  auto opts = torch::TensorOptions().dtype(torch::kDouble);
  auto x = torch::randn({1, 3, 8, 8}, opts).requires_grad_(true);
  auto h = (0.5 * torch::randn({1, 2, 8, 8}, opts)).requires_grad_(true);
  auto c = (0.5 * torch::randn({1, 2, 8, 8}, opts)).requires_grad_(true);
  {
    torch::NoGradGuard g;
    cell->gates->weight.normal_(0.0, 0.3);
    cell->gates->bias.normal_(0.0, 0.3);
  }
  const auto rh = torch::randn({1, 2, 8, 8}, opts);
  const auto rc = torch::randn({1, 2, 8, 8}, opts);
  auto loss = [&] {
    auto s = cell->forward(x, {h, c});
    s = cell->forward(x, s);
    return (rh * s.hidden + rc * s.cell).sum();
  };
  return gradient_error(loss, {x, h, c, cell->gates->weight, cell->gates->bias});
}

/// grid_loss on (1, 3, 2, 8, 8) logits with a sparse random target and a non-unit positive weight.
inline double grid_loss_gradient_error(std::uint64_t seed) {
  torch::manual_seed(seed);
  auto logits = (2.0 * torch::randn({1, 3, 2, 8, 8}, torch::kDouble)).requires_grad_(true);
  const auto target = torch::rand({1, 3, 8, 8}, torch::kDouble) < 0.1;
  auto loss = [&] { return grid_loss(logits, target, 7.5); };
  return gradient_error(loss, {logits});
}

}  // namespace trajgrid::testing
