#include <gtest/gtest.h>

#include <cmath>

#include "trajgrid/core/error.hpp"
#include "trajgrid/core/raster.hpp"
#include "trajgrid/model/gridgen.hpp"

namespace trajgrid {
namespace {

using Shape = std::vector<std::int64_t>;

GridGenConfig tiny_config() {
  GridGenConfig c;
  c.grid_size = 16;
  c.unet_blocks = 4;
  c.unet_base_channels = 4;
  c.resnet_blocks = 2;
  c.resnet_base_channels = 4;
  c.convlstm_kernel = 3;
  c.convlstm_hidden = 4;
  return c;
}

TEST(GridGenConfig, PaperDefaults) {
  const GridGenConfig c;
  EXPECT_EQ(c.grid_size, 128);
  EXPECT_EQ(c.unet_blocks, 7);
  EXPECT_EQ(c.resnet_blocks, 9);
  EXPECT_EQ(c.traj_feat_channels + c.scene_feat_channels, 20);
  EXPECT_EQ(c.convlstm_hidden, 16);
  EXPECT_EQ(c.convlstm_kernel, 11);
  EXPECT_DOUBLE_EQ(c.dropout, 0.5);
  EXPECT_DOUBLE_EQ(c.leaky_slope, 0.2);
  EXPECT_DOUBLE_EQ(c.init_std, 0.02);
  EXPECT_EQ(c.future_steps, 12);
  EXPECT_NO_THROW(c.validate());
}

TEST(GridGenConfig, ValidationErrors) {
  auto expect_config_error = [](GridGenConfig c) {
    try {
      c.validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::config);
    }
  };
  auto c = GridGenConfig{};
  c.scene_feat_channels = 11;
  expect_config_error(c);
  c = GridGenConfig{};
  c.grid_size = 64;  // not divisible by 2^7
  expect_config_error(c);
  c = GridGenConfig{};
  c.convlstm_kernel = 10;
  expect_config_error(c);
  c = GridGenConfig{};
  c.convlstm_hidden = 0;
  expect_config_error(c);
}

TEST(GridGenConfig, JsonRoundTrip) {
  auto c = tiny_config();
  c.positive_class_weight = 77.0;
  const nlohmann::json j = c;
  EXPECT_EQ(j.get<GridGenConfig>(), c);
}

TEST(TrajectoryEncoder, PaperShapeAndOneByOneBottleneck) {
  torch::NoGradGuard no_grad;
  const GridGenConfig c;
  auto enc = build_trajectory_encoder(c);
  enc->eval();
  EXPECT_EQ(enc->bottleneck_size(128), 1);
  const auto out = enc->forward(torch::zeros({1, 8, 128, 128}));
  EXPECT_EQ(out.sizes(), (Shape{1, 10, 128, 128}));
  EXPECT_TRUE(torch::isfinite(out).all().item<bool>());
}

TEST(TrajectoryEncoder, RejectsIndivisibleInput) {
  auto enc = build_trajectory_encoder(tiny_config());
  try {
    enc->forward(torch::zeros({1, 8, 24, 24}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
}

TEST(TrajectoryEncoder, HasNoSaturatingOutput) {
  torch::NoGradGuard no_grad;
  auto c = tiny_config();
  c.init_std = 1.0;  // large weights push a tanh/sigmoid head to its bounds
  auto enc = build_trajectory_encoder(c);
  enc->eval();
  const auto out = enc->forward(torch::rand({2, 8, 16, 16}));
  EXPECT_GT(out.abs().max().item<float>(), 1.0f);
}

TEST(SceneEncoder, PaperShapeAndFinite) {
  torch::NoGradGuard no_grad;
  auto enc = build_scene_encoder(GridGenConfig{});
  enc->eval();
  const auto out = enc->forward(torch::zeros({1, 3, 128, 128}));
  EXPECT_EQ(out.sizes(), (Shape{1, 10, 128, 128}));
  EXPECT_TRUE(torch::isfinite(out).all().item<bool>());
}

TEST(SceneEncoder, HasNineResidualBlocks) {
  auto enc = build_scene_encoder(GridGenConfig{});
  EXPECT_EQ(enc->residual->size(), 9u);
}

TEST(ResidualBlock, ZeroBranchIsIdentity) {
  torch::NoGradGuard no_grad;
  ResidualBlock block(6);
  for (auto& p : block->branch->parameters()) p.zero_();
  block->eval();
  const auto x = torch::randn({2, 6, 5, 5});
  EXPECT_TRUE(torch::equal(block->forward(x), x));
}

TEST(GridGenerator, PaperOutputShapeAndValidProbabilities) {
  torch::NoGradGuard no_grad;
  torch::manual_seed(0);
  GridGenerator model(GridGenConfig{});
  model->eval();
  const auto past = (torch::rand({1, 8, 128, 128}) < 0.001).to(torch::kFloat);
  const auto logits = model->forward(past, torch::rand({1, 3, 128, 128}));
  EXPECT_EQ(logits.sizes(), (Shape{1, 12, 2, 128, 128}));
  const auto sums = torch::softmax(logits, 2).sum(2);
  EXPECT_LT((sums - 1).abs().max().item<float>(), 1e-6);
  const auto p = occupancy_probabilities(logits);
  EXPECT_GE(p.min().item<float>(), 0.0f);
  EXPECT_LE(p.max().item<float>(), 1.0f);
}

TEST(GridGenerator, ForwardProbabilitiesShape) {
  torch::NoGradGuard no_grad;
  const auto c = tiny_config();
  GridGenerator model(c);
  model->eval();
  GridSample s;
  s.geometry = {16, 10.0};
  s.past_grid = rasterize_positions(std::vector<Vec2>(8, {0, 0}), s.geometry);
  s.scene_grid = torch::rand({3, 16, 16});
  const auto p = forward_probabilities(s, model);
  EXPECT_EQ(p.sizes(), (Shape{12, 16, 16}));
}

TEST(GridGenerator, WrongInputShapeIsShapeError) {
  GridGenerator model(tiny_config());
  try {
    model->forward(torch::zeros({1, 7, 16, 16}), torch::zeros({1, 3, 16, 16}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::shape);
  }
}

TEST(GridGenerator, DecoderSeesTheSameFusedInputEveryStep) {
  torch::NoGradGuard no_grad;
  GridGenerator model(tiny_config());
  model->eval();
  const auto traj = torch::randn({1, 10, 16, 16});
  const auto scene = torch::randn({1, 10, 16, 16});
  const auto logits = model->decode_grids(traj, scene);
  EXPECT_EQ(logits.sizes(), (Shape{1, 12, 2, 16, 16}));

  const auto fused = torch::cat({traj, scene}, 1);
  auto state = model->decoder->initial_state(fused);
  for (int t = 0; t < 12; ++t) {
    state = model->decoder->forward(fused, state);
    EXPECT_TRUE(torch::allclose(logits.select(1, t), model->head->forward(state.hidden))) << t;
  }
}

TEST(GridLoss, SaturatedCorrectLogitsGiveZero) {
  const auto target = torch::rand({2, 3, 8, 8}) < 0.2;
  const auto margin = torch::where(target, torch::full({2, 3, 8, 8}, 60.0), torch::full({2, 3, 8, 8}, -60.0));
  const auto logits = torch::stack({-margin, margin}, 2);
  EXPECT_LT(grid_loss(logits, target, 1024.0).item<double>(), 1e-20);
}

TEST(GridLoss, UniformLogitsGiveLn2) {
  const auto target = torch::rand({1, 12, 8, 8}) < 0.1;
  const auto logits = torch::zeros({1, 12, 2, 8, 8}, torch::kDouble);
  EXPECT_NEAR(grid_loss(logits, target, 1.0).item<double>(), std::log(2.0), 1e-12);
}

TEST(GridLoss, MatchesExplicitOracle) {
  torch::manual_seed(3);
  const auto logits = torch::randn({2, 3, 2, 4, 4}, torch::kDouble);
  const auto target = torch::rand({2, 3, 4, 4}) < 0.3;
  const double w = 5.0;
  double sum = 0.0;
  int cells = 0;
  for (int b = 0; b < 2; ++b)
    for (int t = 0; t < 3; ++t)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          const double l0 = logits[b][t][0][r][c].item<double>();
          const double l1 = logits[b][t][1][r][c].item<double>();
          const double lse = std::log(std::exp(l0) + std::exp(l1));
          const bool occ = target[b][t][r][c].item<bool>();
          sum += occ ? w * (lse - l1) : (lse - l0);
          ++cells;
        }
  EXPECT_NEAR(grid_loss(logits, target, w).item<double>(), sum / cells, 1e-12);
}

TEST(GridLoss, HeavierPositiveWeightIncreasesLossOnMisses) {
  auto target = torch::zeros({1, 1, 4, 4}, torch::kBool);
  target[0][0][1][2] = true;
  const auto logits = torch::zeros({1, 1, 2, 4, 4});
  logits[0][0][0].fill_(2.0);  // every cell predicted empty
  const double a = grid_loss(logits, target, 3.0).item<double>();
  const double b = grid_loss(logits, target, 6.0).item<double>();
  EXPECT_GT(b, a);
  EXPECT_GE(a, 0.0);
}

TEST(GridLoss, ShapeMismatchIsShapeError) {
  EXPECT_THROW(grid_loss(torch::zeros({1, 2, 2, 4, 4}), torch::zeros({1, 3, 4, 4}, torch::kBool), 1.0), Error);
}

}  // namespace
}  // namespace trajgrid
