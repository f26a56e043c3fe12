#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "support/fixtures.hpp"
#include "trajgrid/core/error.hpp"
#include "trajgrid/dataset/sample_store.hpp"
#include "trajgrid/metrics/metrics.hpp"
#include "trajgrid/training/evaluation.hpp"
#include "trajgrid/training/trainer.hpp"

namespace trajgrid {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("trajgrid_training_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

TrainConfig quick(int epochs) {
  TrainConfig c;
  c.max_epochs = epochs;
  c.batch_size = 4;
  c.learning_rate = 1e-3;
  c.augment_rotation = false;
  c.seed = 3;
  return c;
}

std::vector<torch::Tensor> params_of(torch::nn::Module& m) {
  std::vector<torch::Tensor> out;
  for (const auto& p : m.parameters()) out.push_back(p.detach().clone());
  return out;
}

bool same_params(torch::nn::Module& m, const std::vector<torch::Tensor>& ref) {
  const auto now = m.parameters();
  if (now.size() != ref.size()) return false;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!torch::equal(now[i], ref[i])) return false;
  }
  return true;
}

class TrainingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    torch::set_num_threads(1);
    torch::manual_seed(0);
    auto all = testing::corridor_samples(16, 16, 11);
    ASSERT_GE(all.size(), 16u);
    train_.assign(all.begin(), all.begin() + 12);
    val_.assign(all.begin() + 12, all.end());
  }
  std::vector<GridSample> train_, val_;
};

TEST(TrainConfig, RejectsInvalidValues) {
  auto expect_config = [](auto mutate) {
    TrainConfig c;
    mutate(c);
    try {
      c.validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::config);
    }
  };
  expect_config([](TrainConfig& c) { c.learning_rate = 0; });
  expect_config([](TrainConfig& c) { c.batch_size = 0; });
  expect_config([](TrainConfig& c) { c.max_epochs = -1; });
  expect_config([](TrainConfig& c) { c.scheduler_patience = 0; });
  expect_config([](TrainConfig& c) { c.scheduler_factor = 1.0; });
  expect_config([](TrainConfig& c) { c.adam_beta1 = 1.0; });
  EXPECT_NO_THROW(TrainConfig{}.validate());
}

TEST_F(TrainingTest, ZeroEpochsLeavesModelUntouched) {
  GridGenerator model(testing::tiny_gridgen());
  const auto before = params_of(*model);
  const auto result = train_gridgen(quick(0), model, train_, val_);
  EXPECT_TRUE(result.curve.empty());
  EXPECT_EQ(result.best_epoch, 0);
  EXPECT_TRUE(same_params(*model, before));
}

TEST_F(TrainingTest, EmptyTrainingSetIsConfigError) {
  GridGenerator model(testing::tiny_gridgen());
  try {
    train_gridgen(quick(1), model, {}, val_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
}

TEST_F(TrainingTest, SameSeedGivesSameCurve) {
  auto run = [&] {
    torch::manual_seed(0);
    GridGenerator model(testing::tiny_gridgen());
    auto cfg = quick(2);
    cfg.augment_rotation = true;
    return train_gridgen(cfg, model, train_, val_).curve;
  };
  const auto a = run();
  const auto b = run();
  ASSERT_EQ(a.size(), 2u);
  ASSERT_EQ(b.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].train_loss, b[i].train_loss);
    EXPECT_EQ(a[i].val_loss, b[i].val_loss);
  }
}

TEST_F(TrainingTest, RestoresBestValidationWeightsAndWritesRunFiles) {
  TempDir dir;
  GridGenerator model(testing::tiny_gridgen());
  auto cfg = quick(4);
  cfg.run_dir = dir.path;
  const auto result = train_gridgen(cfg, model, train_, val_);
  ASSERT_EQ(result.curve.size(), 4u);
  double min_val = result.curve.front().val_loss;
  for (const auto& r : result.curve) min_val = std::min(min_val, r.val_loss);
  EXPECT_DOUBLE_EQ(result.best_val_loss, min_val);
  EXPECT_EQ(result.curve[result.best_epoch - 1].val_loss, min_val);

  torch::NoGradGuard no_grad;
  const auto batch = collate(val_);
  const double reloaded = grid_loss(model->forward(batch.past, batch.scene), batch.target,
                                    model->config().positive_class_weight)
                              .item<double>();
  EXPECT_NEAR(reloaded, min_val, 1e-4 * std::max(1.0, min_val));

  EXPECT_TRUE(fs::exists(dir.path / "gridgen_best.pt"));
  EXPECT_TRUE(fs::exists(dir.path / "gridgen_train_config.json"));
  std::ifstream csv(dir.path / "gridgen_loss.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "epoch,train_loss,val_loss,lr");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(TrainingTest, LearningRateNeverIncreases) {
  GridGenerator model(testing::tiny_gridgen());
  auto cfg = quick(4);
  cfg.scheduler_patience = 1;
  const auto result = train_gridgen(cfg, model, train_, {});
  for (std::size_t i = 1; i < result.curve.size(); ++i) {
    EXPECT_LE(result.curve[i].learning_rate, result.curve[i - 1].learning_rate);
  }
  for (const auto& r : result.curve) EXPECT_EQ(r.val_loss, r.train_loss);
}

TEST_F(TrainingTest, SamplerNeedsAGridGenerator) {
  TrajectorySampler sampler(testing::tiny_sampler(testing::tiny_gridgen()));
  try {
    train_sampler(quick(1), sampler, GridGenerator(nullptr), train_, val_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
}

TEST_F(TrainingTest, SamplerTrainingLeavesGridGeneratorFrozen) {
  GridGenerator gridgen(testing::tiny_gridgen());
  TrajectorySampler sampler(testing::tiny_sampler(gridgen->config()));
  const auto frozen_before = params_of(*gridgen);
  const auto sampler_before = params_of(*sampler);
  auto cfg = quick(2);
  cfg.stage = Stage::sampler;
  cfg.augment_rotation = true;
  const auto result = train_sampler(cfg, sampler, gridgen, train_, val_);
  EXPECT_EQ(result.curve.size(), 2u);
  EXPECT_TRUE(same_params(*gridgen, frozen_before));
  EXPECT_FALSE(same_params(*sampler, sampler_before));
}

TEST_F(TrainingTest, EmptyBudgetReportsUntrainedError) {
  torch::manual_seed(5);
  GridGenerator gridgen(testing::tiny_gridgen());
  TrajectorySampler sampler(testing::tiny_sampler(gridgen->config()));
  std::vector<GridSample> few(train_.begin(), train_.begin() + 4);
  OverfitBudget budget;
  budget.gridgen_iterations = 0;
  budget.sampler_iterations = 0;
  const double probe = overfit_probe(gridgen, sampler, few, budget);

  const auto preds = predict(gridgen, sampler, few);
  double sum = 0.0;
  for (std::size_t i = 0; i < few.size(); ++i) sum += made(future_world(few[i]), preds[i]);
  EXPECT_NEAR(probe, sum / few.size(), 1e-6);
}

TEST(OverfitProbe, StoppedAgentConvergesWithinOneCell) {
  torch::set_num_threads(1);
  torch::manual_seed(1);
  const GridGeometry geom{16, 10.0};
  const RgbImage scene(320, 320, Rgb{90, 90, 90});
  PastWindow past;
  FutureWindow future;
  past.positions.assign(8, Vec2{160.0, 160.0});
  future.positions.assign(12, Vec2{160.0, 160.0});
  const auto sample = make_sample(past, future, scene, geom, SampleMeta{"s", "a", 0, 0.0, false});
  GridGenerator gridgen(testing::tiny_gridgen());
  TrajectorySampler sampler(testing::tiny_sampler(gridgen->config()));
  const double error = overfit_probe(gridgen, sampler, {sample}, OverfitBudget{});
  EXPECT_LT(error, geom.scale);
}

TEST_F(TrainingTest, GroundTruthPredictionsScorePerfectly) {
  SyntheticScene scene;
  const auto samples = testing::corridor_samples(10, 16, 11, &scene);
  LabelLibrary labels{{"corridor", scene.labels}};
  const auto report = evaluate_predictions(samples, ground_truth_predictions(samples), labels);
  EXPECT_EQ(report.samples, samples.size());
  EXPECT_DOUBLE_EQ(report.made_px, 0.0);
  EXPECT_DOUBLE_EQ(report.mfde_px, 0.0);

  CSAccumulator oracle;
  for (const auto& s : samples) {
    for (const auto& p : future_world(s)) oracle.add_point(p, scene.labels);
  }
  const auto expected = oracle.report();
  EXPECT_DOUBLE_EQ(report.cs.pct_path, expected.pct_path);
  EXPECT_DOUBLE_EQ(report.cs.pct_obstacle, expected.pct_obstacle);
  EXPECT_NEAR(report.cs.pct_path + report.cs.pct_terrain + report.cs.pct_obstacle + report.cs.pct_out_of_image, 100.0,
              1e-6);
}

TEST_F(TrainingTest, MissingSceneLabelsIsAnError) {
  const auto samples = testing::corridor_samples(3, 16, 11);
  LabelLibrary labels{{"elsewhere", SemanticLabelMap(4, 4, SemanticClass::path)}};
  try {
    evaluate_predictions(samples, ground_truth_predictions(samples), labels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_scene);
  }
}

}  // namespace
}  // namespace trajgrid
