#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "trajgrid/core/error.hpp"
#include "trajgrid/metrics/metrics.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {
namespace {

SamplerConfig tiny_sampler(int k = 5) {
  SamplerConfig c;
  c.k = k;
  c.grid_size = 16;
  c.convlstm_kernel = 3;
  c.convlstm_hidden = 4;
  c.pool_size = 4;
  c.fc_hidden = 32;
  return c;
}

TEST(Sampler, EmitsKTrajectoriesOfTfPoints) {
  TrajectorySampler model(tiny_sampler());
  const auto set = sample_trajectories(torch::rand({12, 16, 16}), model);
  ASSERT_EQ(set.size(), 5u);
  for (const auto& t : set.trajectories) EXPECT_EQ(t.size(), 12u);
  EXPECT_EQ(set.frame, CoordinateFrame::agent_cells);
}

TEST(Sampler, PaperConfigShape) {
  torch::NoGradGuard no_grad;
  TrajectorySampler model(SamplerConfig{});
  const auto out = model->forward(torch::rand({2, 12, 128, 128}));
  EXPECT_EQ(out.sizes(), (std::vector<std::int64_t>{2, 5, 12, 2}));
}

TEST(Sampler, IsDeterministic) {
  TrajectorySampler model(tiny_sampler());
  const auto probs = torch::rand({12, 16, 16});
  const auto a = sample_trajectories(probs, model);
  const auto b = sample_trajectories(probs, model);
  EXPECT_EQ(a.trajectories, b.trajectories);
}

TEST(Sampler, WrongStepCountIsShapeError) {
  TrajectorySampler model(tiny_sampler());
  try {
    model->forward(torch::rand({1, 8, 16, 16}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::shape);
  }
}

TEST(Sampler, PermutingHeadsPermutesTrajectories) {
  torch::NoGradGuard no_grad;
  TrajectorySampler model(tiny_sampler(3));
  const auto probs = torch::rand({12, 16, 16});
  const auto before = sample_trajectories(probs, model);

  auto* last = model->fc[model->fc->size() - 1]->as<torch::nn::Linear>();
  const std::vector<int> perm{2, 0, 1};
  auto w = last->weight.clone();
  auto b = last->bias.clone();
  for (int k = 0; k < 3; ++k) {
    last->weight.narrow(0, 2 * k, 2).copy_(w.narrow(0, 2 * perm[k], 2));
    last->bias.narrow(0, 2 * k, 2).copy_(b.narrow(0, 2 * perm[k], 2));
  }
  const auto after = sample_trajectories(probs, model);
  // Reordered weight rows can change float rounding in the matrix product.
  for (int k = 0; k < 3; ++k) {
    for (int t = 0; t < 12; ++t) {
      EXPECT_NEAR(after.trajectories[k][t].x, before.trajectories[perm[k]][t].x, 1e-5);
      EXPECT_NEAR(after.trajectories[k][t].y, before.trajectories[perm[k]][t].y, 1e-5);
    }
  }

  std::vector<Vec2> gt(12, {1.0, -2.0});
  EXPECT_NEAR(made(gt, before), made(gt, after), 1e-5);
}

TEST(SamplerConfig, Validation) {
  auto c = tiny_sampler();
  c.k = 0;
  EXPECT_THROW(c.validate(), Error);
  c = tiny_sampler();
  c.convlstm_kernel = 4;
  EXPECT_THROW(c.validate(), Error);
  const nlohmann::json j = tiny_sampler(7);
  EXPECT_EQ(j.get<SamplerConfig>(), tiny_sampler(7));
}

torch::Tensor as_tensor(const std::vector<std::vector<Vec2>>& set) {
  auto t = torch::zeros({1, static_cast<long>(set.size()), static_cast<long>(set[0].size()), 2}, torch::kDouble);
  for (std::size_t k = 0; k < set.size(); ++k)
    for (std::size_t i = 0; i < set[k].size(); ++i) {
      t[0][k][i][0] = set[k][i].x;
      t[0][k][i][1] = set[k][i].y;
    }
  return t;
}

torch::Tensor as_tensor(const std::vector<Vec2>& gt) { return as_tensor(std::vector<std::vector<Vec2>>{gt})[0]; }

TEST(VarietyLoss, ZeroWhenACandidateMatches) {
  testing::Gen gen(1);
  auto set = gen.trajectory_set(5, 12, 10);
  const auto gt = set[3];
  EXPECT_EQ(variety_loss(as_tensor(set), as_tensor(gt)).item<double>(), 0.0);
}

TEST(VarietyLoss, SingleCandidateIsPlainAde) {
  std::vector<Vec2> gt, pred;
  for (int i = 0; i < 12; ++i) {
    gt.push_back({double(i), 0});
    pred.push_back({double(i) + 3, 4});
  }
  EXPECT_NEAR(variety_loss(as_tensor(std::vector<std::vector<Vec2>>{pred}), as_tensor(gt)).item<double>(), 5.0, 1e-12);
}

TEST(VarietyLoss, TakesTheMinimum) {
  std::vector<Vec2> gt(12, {0, 0}), a(12, {5, 0}), b(12, {0, 10});
  EXPECT_NEAR(variety_loss(as_tensor({b, a}), as_tensor(gt)).item<double>(), 5.0, 1e-12);
}

TEST(VarietyLoss, GradientOnlyThroughBestCandidate) {
  std::vector<Vec2> gt(4, {0, 0}), a(4, {1, 1}), b(4, {3, 0});
  auto pred = as_tensor({b, a}).requires_grad_(true);
  variety_loss(pred, as_tensor(gt)).backward();
  EXPECT_EQ(pred.grad()[0][0].abs().sum().item<double>(), 0.0);
  EXPECT_GT(pred.grad()[0][1].abs().sum().item<double>(), 0.0);
}

TEST(VarietyLoss, CoincidentPointsHaveFiniteZeroGradient) {
  std::vector<Vec2> gt(4, {2, 2});
  auto pred = as_tensor(std::vector<std::vector<Vec2>>{gt}).requires_grad_(true);
  variety_loss(pred, as_tensor(gt)).backward();
  EXPECT_TRUE(torch::isfinite(pred.grad()).all().item<bool>());
  EXPECT_EQ(pred.grad().abs().sum().item<double>(), 0.0);
}

TEST(VarietyLoss, PropertiesOnRandomSets) {
  testing::Gen gen(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = gen.integer(1, 8);
    auto set = gen.trajectory_set(k, 12, 50);
    const auto gt = gen.walk(12, 50);
    const double loss = variety_loss(as_tensor(set), as_tensor(gt)).item<double>();
    const auto ades = average_displacement(as_tensor(set), as_tensor(gt));
    for (int i = 0; i < k; ++i) EXPECT_LE(loss, ades[0][i].item<double>() + 1e-12);
    set.push_back(gen.walk(12, 50));
    EXPECT_LE(variety_loss(as_tensor(set), as_tensor(gt)).item<double>(), loss + 1e-12);
  }
}

TEST(VarietyLoss, LengthMismatchThrows) {
  EXPECT_THROW(variety_loss(torch::zeros({1, 2, 12, 2}), torch::zeros({1, 8, 2})), Error);
}

GridSample sample_at(Vec2 anchor, double scale, double rotation = 0) {
  GridSample s;
  s.anchor_world = anchor;
  s.geometry = {16, scale};
  s.meta.rotation_deg = rotation;
  return s;
}

TEST(ToWorld, OriginMapsToAnchor) {
  const TrajectorySet pred{CoordinateFrame::agent_cells, {{{0, 0}}}};
  const auto w = to_world(pred, sample_at({123.5, 77.25}, 10));
  EXPECT_EQ(w.frame, CoordinateFrame::world_pixels);
  EXPECT_EQ(w.trajectories[0][0], (Vec2{123.5, 77.25}));
}

TEST(ToWorld, ScalesCells) {
  const TrajectorySet pred{CoordinateFrame::agent_cells, {{{1, 1}}}};
  EXPECT_EQ(to_world(pred, sample_at({100, 200}, 10)).trajectories[0][0], (Vec2{110, 210}));
}

TEST(ToWorld, RoundTripIsExactForUnrotatedSamples) {
  testing::Gen gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = sample_at({double(gen.integer(0, 2000)), double(gen.integer(0, 2000))}, 10);
    TrajectorySet world{CoordinateFrame::world_pixels, {}};
    for (int k = 0; k < 3; ++k) {
      std::vector<Vec2> t;
      for (int i = 0; i < 12; ++i) t.push_back({double(gen.integer(0, 4000)), double(gen.integer(0, 4000))});
      world.trajectories.push_back(t);
    }
    EXPECT_EQ(to_world(to_agent_cells(world, s), s).trajectories, world.trajectories);
  }
}

TEST(ToWorld, UndoesAugmentationRotation) {
  const TrajectorySet pred{CoordinateFrame::agent_cells, {{{0, 3}}}};
  const auto w = to_world(pred, sample_at({50, 50}, 10, 90));
  EXPECT_NEAR(w.trajectories[0][0].x, 80.0, 1e-12);
  EXPECT_NEAR(w.trajectories[0][0].y, 50.0, 1e-12);
}

TEST(ToWorld, RejectsWrongFrame) {
  const TrajectorySet world{CoordinateFrame::world_pixels, {{{0, 0}}}};
  EXPECT_THROW(to_world(world, sample_at({0, 0}, 10)), Error);
}

}  // namespace
}  // namespace trajgrid
