#include "trajgrid/model/pretrain.hpp"

#include <random>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

torch::nn::Conv2d make_segmentation_head(const ResNetEncoder& encoder, int n_classes) {
  if (n_classes < 2) throw Error(ErrorCode::config, "segmentation needs at least two classes");
  return torch::nn::Conv2d(torch::nn::Conv2dOptions(encoder->out_channels(), n_classes, 1));
}

namespace {

void check(const std::vector<SegmentationExample>& data) {
  for (const auto& ex : data) {
    if (ex.image.dim() != 3 || ex.image.size(0) != 3 || ex.labels.dim() != 2 || ex.image.size(1) != ex.labels.size(0) ||
        ex.image.size(2) != ex.labels.size(1)) {
      throw Error(ErrorCode::config, "segmentation image and label map resolutions differ");
    }
  }
}

}  // namespace

torch::nn::Conv2d pretrain_scene_encoder(ResNetEncoder& encoder, const std::vector<SegmentationExample>& data,
                                         const PretrainOptions& options) {
  check(data);
  torch::manual_seed(options.seed);
  auto head = make_segmentation_head(encoder, options.n_classes);
  if (options.steps <= 0 || data.empty()) return head;
  std::mt19937_64 rng(options.seed);
  std::vector<torch::Tensor> params = encoder->parameters();
  for (const auto& p : head->parameters()) params.push_back(p);
  torch::optim::Adam opt(params, torch::optim::AdamOptions(options.learning_rate).betas({0.5, 0.999}));
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);

  encoder->train();
  for (int step = 0; step < options.steps; ++step) {
    std::vector<torch::Tensor> images, labels;
    for (int b = 0; b < options.batch_size; ++b) {
      const auto& ex = data[pick(rng)];
      images.push_back(ex.image.to(torch::kFloat));
      labels.push_back(ex.labels.to(torch::kLong));
    }
    opt.zero_grad();
    auto logits = head->forward(encoder->forward(torch::stack(images)));
    auto loss = torch::nn::functional::cross_entropy(logits, torch::stack(labels));
    loss.backward();
    opt.step();
  }
  encoder->eval();
  head->eval();
  return head;
}

double segmentation_accuracy(ResNetEncoder& encoder, torch::nn::Conv2d& head,
                             const std::vector<SegmentationExample>& data) {
  check(data);
  torch::NoGradGuard no_grad;
  encoder->eval();
  double correct = 0.0;
  double total = 0.0;
  for (const auto& ex : data) {
    const auto pred = head->forward(encoder->forward(ex.image.unsqueeze(0).to(torch::kFloat))).argmax(1).squeeze(0);
    correct += pred.eq(ex.labels).sum().item<double>();
    total += static_cast<double>(ex.labels.numel());
  }
  return total > 0 ? correct / total : 0.0;
}

}  // namespace trajgrid
