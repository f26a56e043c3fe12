#include "trajgrid/cli/cli.hpp"

#include <torch/torch.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "trajgrid/cli/config.hpp"
#include "trajgrid/core/error.hpp"
#include "trajgrid/core/image.hpp"
#include "trajgrid/core/raster.hpp"
#include "trajgrid/dataset/annotations.hpp"
#include "trajgrid/dataset/manifest.hpp"
#include "trajgrid/dataset/sample_store.hpp"
#include "trajgrid/dataset/synthetic.hpp"
#include "trajgrid/dataset/windowing.hpp"
#include "trajgrid/metrics/label_map.hpp"
#include "trajgrid/metrics/report.hpp"
#include "trajgrid/model/checkpoint.hpp"
#include "trajgrid/model/pretrain.hpp"
#include "trajgrid/training/evaluation.hpp"
#include "trajgrid/training/trainer.hpp"
#include "trajgrid/viz/render.hpp"

namespace fs = std::filesystem;

namespace trajgrid {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::io:
    case ErrorCode::missing_scene:
      return kExitRuntime;
    default:
      return kExitValidation;
  }
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

/// Writes the resolved options of the invoked subcommand as an INI file that `--config` accepts.
void write_echo(const CLI::App& root, const fs::path& file) {
  ensure_parent(file);
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::io, "cannot write " + file.string());
  const CLI::App* sub = root.get_subcommands().front();
  out << "[" << sub->get_name() << "]\n" << sub->config_to_str(true, false);
}

/// Input paths are recorded absolute so a config echo replays from any directory.
const CLI::Validator kAbsoluteInput(
    [](std::string& s) {
      if (!s.empty()) s = fs::absolute(s).lexically_normal().string();
      return std::string();
    },
    "");

/// Output paths resolve against the run-root environment variable, then become absolute.
const CLI::Validator kOutputPath(
    [](std::string& s) {
      if (!s.empty()) s = fs::absolute(resolve_run_path(s)).lexically_normal().string();
      return std::string();
    },
    "");

std::vector<SceneEntry> select_scenes(const fs::path& manifest, const fs::path& splits, const std::string& split) {
  auto scenes = read_scene_manifest(manifest);
  if (splits.empty()) return scenes;
  const auto assignment = read_split_manifest(splits);
  const Split wanted = parse_split(split);
  std::vector<SceneEntry> out;
  for (auto& s : scenes) {
    auto it = assignment.find(s.scene_id);
    if (it != assignment.end() && it->second == wanted) out.push_back(std::move(s));
  }
  return out;
}

std::vector<GridSample> load_store(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::io, "sample store not found: " + path.string());
  return load_samples(path);
}

void check_geometry(const std::vector<GridSample>& samples, int grid_size, const std::string& what) {
  for (const auto& s : samples) {
    if (s.geometry.size != grid_size) {
      throw Error(ErrorCode::config, what + " has grid size " + std::to_string(s.geometry.size) +
                                         " but the model expects " + std::to_string(grid_size));
    }
  }
}

// ---------------------------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::string manifest, splits, split = "train", out;
  int grid = 128;
  double scale = 10.0;
  int past = 8, future = 12;
  std::int64_t stride = 12, annotation_stride = 0;
};

void add_ingest(CLI::App& app, IngestArgs& a) {
  auto* sub = app.add_subcommand("ingest", "Annotations + scene images -> sample store");
  sub->add_option("--manifest", a.manifest, "Scene manifest (id annotations image [labels])")
      ->required()
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--splits", a.splits, "Split manifest (scene_id split)")
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--split", a.split, "Split to ingest")->check(CLI::IsMember({"train", "val", "test"}));
  sub->add_option("--out", a.out, "Output sample store")->required()->transform(kOutputPath);
  sub->add_option("--grid", a.grid, "Grid size N");
  sub->add_option("--scale", a.scale, "Source pixels per cell");
  sub->add_option("--past", a.past, "Past steps t_h");
  sub->add_option("--future", a.future, "Future steps t_f");
  sub->add_option("--stride", a.stride, "Frames between samples");
  sub->add_option("--annotation-stride", a.annotation_stride, "Annotation frame step (0 = infer)");
}

int run_ingest(const CLI::App& root, const IngestArgs& a) {
  const GridGeometry geom{a.grid, a.scale};
  geom.validate();
  const WindowConfig wcfg{a.past, a.future, a.stride};
  if (wcfg.past_steps < 1 || wcfg.future_steps < 1 || wcfg.stride_frames < 1) {
    throw Error(ErrorCode::config, "past, future and stride must be positive");
  }
  const auto scenes = select_scenes(a.manifest, a.splits, a.split);
  std::vector<GridSample> samples;
  for (const auto& scene : scenes) {
    std::ifstream in(scene.annotations);
    if (!in) throw Error(ErrorCode::io, "cannot open " + scene.annotations.string());
    const auto tracks = build_tracks(parse_annotations(in), a.annotation_stride);
    const RgbImage image = load_image(scene.image);
    auto part = window_samples(tracks, wcfg, geom, image, scene.scene_id);
    std::cout << scene.scene_id << ": " << tracks.size() << " tracks, " << part.size() << " samples\n";
    samples.insert(samples.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  const fs::path out = resolve_run_path(a.out);
  ensure_parent(out);
  save_samples(out, samples);
  write_echo(root, fs::path(out.string() + ".ini"));
  std::cout << "wrote " << samples.size() << " samples to " << out.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string out, kind = "corridor";
  int scenes = 5, agents = 150, size = 640, val_scenes = 1, test_scenes = 1;
  std::uint64_t seed = 0;
};

void add_synth(CLI::App& app, SynthArgs& a) {
  auto* sub = app.add_subcommand("synth", "Generate a synthetic dataset");
  sub->add_option("--out", a.out, "Output directory")->required()->transform(kOutputPath);
  sub->add_option("--kind", a.kind, "Scene family")->check(CLI::IsMember({"corridor", "t-intersection", "straight"}));
  sub->add_option("--scenes", a.scenes, "Number of scenes")->check(CLI::PositiveNumber);
  sub->add_option("--agents", a.agents, "Agents per scene")->check(CLI::NonNegativeNumber);
  sub->add_option("--size", a.size, "Scene width in pixels")->check(CLI::Range(64, 8192));
  sub->add_option("--val-scenes", a.val_scenes, "Scenes assigned to val")->check(CLI::NonNegativeNumber);
  sub->add_option("--test-scenes", a.test_scenes, "Scenes assigned to test")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", a.seed, "Random seed");
}

int run_synth(const CLI::App& root, const SynthArgs& a) {
  if (a.val_scenes + a.test_scenes > a.scenes) throw Error(ErrorCode::config, "more val/test scenes than scenes");
  const fs::path out = resolve_run_path(a.out);
  fs::create_directories(out / "annotations");
  fs::create_directories(out / "images");
  fs::create_directories(out / "labels");
  std::vector<SceneEntry> entries;
  std::map<std::string, Split> splits;
  for (int i = 0; i < a.scenes; ++i) {
    SceneSpec spec;
    if (a.kind == "corridor") {
      spec = corridor_world(a.seed * 7919 + static_cast<std::uint64_t>(i), a.size);
    } else if (a.kind == "t-intersection") {
      spec = t_intersection(a.size);
    } else {
      spec = straight_corridor(a.size, a.size / 2);
    }
    const auto scene = generate_synthetic(spec, AgentSpec{}, a.agents, a.seed * 1000003 + static_cast<std::uint64_t>(i));
    char id_buf[32];
    std::snprintf(id_buf, sizeof id_buf, "synth_%03d", i);
    const std::string id = id_buf;
    SceneEntry e{id, out / "annotations" / (id + ".txt"), out / "images" / (id + ".png"),
                 out / "labels" / (id + ".png")};
    {
      std::ofstream ann(e.annotations);
      if (!ann) throw Error(ErrorCode::io, "cannot write " + e.annotations.string());
      write_annotations(ann, to_annotations(scene.trajectories));
    }
    save_png(scene.image, e.image);
    save_png(label_map_to_rgb(scene.labels), e.labels);
    Split split = Split::train;
    if (i >= a.scenes - a.test_scenes) {
      split = Split::test;
    } else if (i >= a.scenes - a.test_scenes - a.val_scenes) {
      split = Split::val;
    }
    splits[id] = split;
    entries.push_back(std::move(e));
    std::cout << id << " (" << to_string(split) << "): " << scene.trajectories.size() << " agents\n";
  }
  write_scene_manifest(out / "scenes.txt", entries);
  write_split_manifest(out / "splits.txt", splits);
  write_echo(root, out / "synth.ini");
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// pretrain-scene

struct PretrainArgs {
  std::string manifest, splits, split = "train", out, preset = "desk";
  int crops = 64, steps = 200, batch = 4;
  double lr = 2e-3;
  std::uint64_t seed = 0;
};

void add_pretrain(CLI::App& app, PretrainArgs& a) {
  auto* sub = app.add_subcommand("pretrain-scene", "Pretrain the scene encoder on label maps");
  sub->add_option("--manifest", a.manifest, "Scene manifest with label rasters")
      ->required()
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--splits", a.splits, "Split manifest")->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--split", a.split, "Split to use")->check(CLI::IsMember({"train", "val", "test"}));
  sub->add_option("--out", a.out, "Output checkpoint")->required()->transform(kOutputPath);
  sub->add_option("--preset", a.preset, "Model preset")->check(CLI::IsMember({"paper", "desk"}));
  sub->add_option("--crops", a.crops, "Random crops per scene")->check(CLI::PositiveNumber);
  sub->add_option("--steps", a.steps, "Optimisation steps")->check(CLI::NonNegativeNumber);
  sub->add_option("--batch", a.batch, "Batch size")->check(CLI::PositiveNumber);
  sub->add_option("--lr", a.lr, "Learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed, "Random seed");
}

int run_pretrain(const CLI::App& root, const PretrainArgs& a) {
  const GridGenConfig cfg = gridgen_preset(a.preset);
  const GridGeometry geom{cfg.grid_size, preset_scale(a.preset)};
  std::mt19937_64 rng(a.seed);
  std::vector<SegmentationExample> data;
  for (const auto& scene : select_scenes(a.manifest, a.splits, a.split)) {
    if (scene.labels.empty()) continue;
    const RgbImage image = load_image(scene.image);
    const SemanticLabelMap labels = load_label_map(scene.labels);
    std::uniform_real_distribution<double> ux(0.0, image.width), uy(0.0, image.height);
    for (int c = 0; c < a.crops; ++c) {
      const Vec2 anchor{ux(rng), uy(rng)};
      auto lab = torch::full({geom.size, geom.size}, static_cast<std::int64_t>(SemanticClass::obstacle), torch::kLong);
      auto acc = lab.accessor<std::int64_t, 2>();
      for (int r = 0; r < geom.size; ++r) {
        for (int col = 0; col < geom.size; ++col) {
          const Vec2 p = anchor + cell_center({r, col}, geom);
          const int px = static_cast<int>(std::floor(p.x));
          const int py = static_cast<int>(std::floor(p.y));
          if (labels.contains(px, py)) acc[r][col] = static_cast<std::int64_t>(labels.at(px, py));
        }
      }
      data.push_back({crop_scene(image, anchor, geom), lab});
    }
  }
  if (data.empty()) throw Error(ErrorCode::config, "no scenes with label maps in the selected split");

  torch::manual_seed(a.seed);
  ResNetEncoder encoder = build_scene_encoder(cfg);
  PretrainOptions opts;
  opts.n_classes = 3;
  opts.steps = a.steps;
  opts.batch_size = a.batch;
  opts.learning_rate = a.lr;
  opts.seed = a.seed;
  auto head = pretrain_scene_encoder(encoder, data, opts);
  std::cout << "pixel accuracy " << segmentation_accuracy(encoder, head, data) << " on " << data.size()
            << " crops\n";
  const fs::path out = resolve_run_path(a.out);
  ensure_parent(out);
  save_checkpoint(out, checkpoint_section::scene_encoder, nlohmann::json(cfg), *encoder);
  write_echo(root, fs::path(out.string() + ".ini"));
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// train-gridgen / train-sampler

struct TrainArgs {
  std::string train, val, out_dir, preset = "desk";
  int epochs = 20, batch = 16;
  double lr = 2e-4;
  int patience = 4;
  double factor = 0.5;
  bool no_augment = false;
  bool verbose = false;
  std::uint64_t seed = 0;
};

void add_train_options(CLI::App* sub, TrainArgs& a) {
  sub->add_option("--train", a.train, "Training sample store")
      ->required()
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--val", a.val, "Validation sample store")->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--out-dir", a.out_dir, "Run directory")->required()->transform(kOutputPath);
  sub->add_option("--preset", a.preset, "Model preset")->check(CLI::IsMember({"paper", "desk"}));
  sub->add_option("--epochs", a.epochs, "Maximum epochs")->check(CLI::NonNegativeNumber);
  sub->add_option("--batch", a.batch, "Batch size")->check(CLI::PositiveNumber);
  sub->add_option("--lr", a.lr, "Initial learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--patience", a.patience, "Epochs without improvement before the LR is reduced")
      ->check(CLI::PositiveNumber);
  sub->add_option("--factor", a.factor, "LR reduction factor")->check(CLI::Range(0.0, 1.0));
  sub->add_flag("--no-augment", a.no_augment, "Disable rotation augmentation");
  sub->add_flag("--verbose", a.verbose, "Print per-epoch losses");
  sub->add_option("--seed", a.seed, "Random seed");
}

TrainConfig make_train_config(const TrainArgs& a, Stage stage, const fs::path& run_dir) {
  TrainConfig t;
  t.stage = stage;
  t.learning_rate = a.lr;
  t.batch_size = a.batch;
  t.max_epochs = a.epochs;
  t.scheduler_patience = a.patience;
  t.scheduler_factor = a.factor;
  t.augment_rotation = !a.no_augment;
  t.seed = a.seed;
  t.run_dir = run_dir;
  t.verbose = a.verbose;
  t.validate();
  return t;
}

void print_result(const TrainResult& r) {
  if (r.curve.empty()) {
    std::cout << "no epochs run\n";
    return;
  }
  std::cout << "epochs " << r.curve.size() << ", best epoch " << r.best_epoch << ", best val loss "
            << r.best_val_loss << "\n";
}

struct GridGenArgs {
  TrainArgs train;
  std::string scene_encoder;
  double positive_weight = 0;
};

void add_train_gridgen(CLI::App& app, GridGenArgs& a) {
  auto* sub = app.add_subcommand("train-gridgen", "Train the probability-grid generator");
  add_train_options(sub, a.train);
  sub->add_option("--scene-encoder", a.scene_encoder, "Pretrained scene-encoder checkpoint")
      ->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--positive-weight", a.positive_weight, "Occupied-cell loss weight (0 = preset)")
      ->check(CLI::NonNegativeNumber);
}

int run_train_gridgen(const CLI::App& root, const GridGenArgs& a) {
  GridGenConfig cfg = gridgen_preset(a.train.preset);
  if (a.positive_weight > 0) cfg.positive_class_weight = a.positive_weight;
  cfg.validate();
  const auto train = load_store(a.train.train);
  const auto val = a.train.val.empty() ? std::vector<GridSample>{} : load_store(a.train.val);
  check_geometry(train, cfg.grid_size, "training store");
  check_geometry(val, cfg.grid_size, "validation store");

  const fs::path run_dir = resolve_run_path(a.train.out_dir);
  fs::create_directories(run_dir);
  write_echo(root, run_dir / "train-gridgen.ini");
  const TrainConfig tcfg = make_train_config(a.train, Stage::gridgen, run_dir);

  torch::manual_seed(a.train.seed);
  GridGenerator model(cfg);
  if (!a.scene_encoder.empty()) load_checkpoint(a.scene_encoder, checkpoint_section::scene_encoder, *model->scene_encoder);
  const auto result = train_gridgen(tcfg, model, train, val);
  save_gridgen(run_dir / "gridgen.pt", model);
  print_result(result);
  return kExitOk;
}

struct SamplerArgs {
  TrainArgs train;
  std::string gridgen;
  int k = 5;
};

void add_train_sampler(CLI::App& app, SamplerArgs& a) {
  auto* sub = app.add_subcommand("train-sampler", "Train the trajectory sampler on a frozen grid generator");
  add_train_options(sub, a.train);
  sub->add_option("--gridgen", a.gridgen, "Trained grid-generator checkpoint")
      ->required()
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--k", a.k, "Trajectories per sample")->check(CLI::PositiveNumber);
}

int run_train_sampler(const CLI::App& root, const SamplerArgs& a) {
  GridGenerator gridgen = load_gridgen(a.gridgen);
  SamplerConfig scfg = sampler_preset(a.train.preset, gridgen->config());
  scfg.k = a.k;
  scfg.validate();
  const auto train = load_store(a.train.train);
  const auto val = a.train.val.empty() ? std::vector<GridSample>{} : load_store(a.train.val);
  check_geometry(train, scfg.grid_size, "training store");
  check_geometry(val, scfg.grid_size, "validation store");

  const fs::path run_dir = resolve_run_path(a.train.out_dir);
  fs::create_directories(run_dir);
  write_echo(root, run_dir / "train-sampler.ini");
  const TrainConfig tcfg = make_train_config(a.train, Stage::sampler, run_dir);

  torch::manual_seed(a.train.seed);
  TrajectorySampler model(scfg);
  const auto result = train_sampler(tcfg, model, gridgen, train, val);
  save_sampler(run_dir / "sampler.pt", model);
  print_result(result);
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string store, gridgen, sampler, manifest, out;
  bool gt_as_prediction = false;
  int batch = 16;
};

void add_evaluate(CLI::App& app, EvaluateArgs& a) {
  auto* sub = app.add_subcommand("evaluate", "Compute mADE, mFDE, CS and obstacle-free rate");
  sub->add_option("--store", a.store, "Sample store to evaluate")
      ->required()
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--gridgen", a.gridgen, "Grid-generator checkpoint")
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--sampler", a.sampler, "Sampler checkpoint")->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--manifest", a.manifest, "Scene manifest providing label maps for CS")
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--out", a.out, "Report path (JSON)")->transform(kOutputPath);
  sub->add_option("--batch", a.batch, "Inference batch size")->check(CLI::PositiveNumber);
  sub->add_flag("--gt-as-prediction", a.gt_as_prediction, "Score the ground truth as the only candidate");
}

LabelLibrary load_labels(const fs::path& manifest) {
  LabelLibrary labels;
  if (manifest.empty()) return labels;
  for (const auto& scene : read_scene_manifest(manifest)) {
    if (!scene.labels.empty()) labels.emplace(scene.scene_id, load_label_map(scene.labels));
  }
  return labels;
}

int run_evaluate(const CLI::App& root, const EvaluateArgs& a) {
  if (!a.gt_as_prediction && (a.gridgen.empty() || a.sampler.empty())) {
    throw Error(ErrorCode::config, "evaluate needs --gridgen and --sampler, or --gt-as-prediction");
  }
  const auto samples = load_store(a.store);
  const LabelLibrary labels = load_labels(a.manifest);
  std::vector<TrajectorySet> preds;
  if (a.gt_as_prediction) {
    preds = ground_truth_predictions(samples);
  } else {
    GridGenerator gridgen = load_gridgen(a.gridgen);
    TrajectorySampler sampler = load_sampler(a.sampler);
    check_geometry(samples, gridgen->config().grid_size, "sample store");
    preds = predict(gridgen, sampler, samples, a.batch);
  }
  const MetricsReport report = evaluate_predictions(samples, preds, labels);
  std::cout << to_json(report).dump(2) << "\n";
  if (!a.out.empty()) {
    const fs::path out = resolve_run_path(a.out);
    ensure_parent(out);
    write_report(out, report);
    write_echo(root, fs::path(out.string() + ".ini"));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// render

struct RenderArgs {
  std::string store, gridgen, sampler, out_dir;
  std::vector<int> samples{0};
  int ppc = 4;
  int columns = 4;
};

void add_render(CLI::App& app, RenderArgs& a) {
  auto* sub = app.add_subcommand("render", "Draw trajectory overlays and probability heatmaps");
  sub->add_option("--store", a.store, "Sample store")->required()->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--sample", a.samples, "Sample indices")->check(CLI::NonNegativeNumber);
  sub->add_option("--gridgen", a.gridgen, "Grid-generator checkpoint (default: show target grids)")
      ->check(CLI::ExistingFile)->transform(kAbsoluteInput);
  sub->add_option("--sampler", a.sampler, "Sampler checkpoint (needs --gridgen)")
      ->check(CLI::ExistingFile)
      ->transform(kAbsoluteInput);
  sub->add_option("--out-dir", a.out_dir, "Output directory")->required()->transform(kOutputPath);
  sub->add_option("--ppc", a.ppc, "Output pixels per grid cell")->check(CLI::Range(1, 64));
  sub->add_option("--columns", a.columns, "Heatmap panels per row")->check(CLI::PositiveNumber);
}

int run_render(const CLI::App& root, const RenderArgs& a) {
  if (!a.sampler.empty() && a.gridgen.empty()) throw Error(ErrorCode::config, "--sampler requires --gridgen");
  const auto samples = load_store(a.store);
  for (int i : a.samples) {
    if (i >= static_cast<int>(samples.size())) {
      throw Error(ErrorCode::config, "sample index " + std::to_string(i) + " out of range (store has " +
                                         std::to_string(samples.size()) + ")");
    }
  }
  std::optional<GridGenerator> gridgen;
  std::optional<TrajectorySampler> sampler;
  if (!a.gridgen.empty()) {
    gridgen = load_gridgen(a.gridgen);
    (*gridgen)->eval();
    check_geometry(samples, (*gridgen)->config().grid_size, "sample store");
  }
  if (!a.sampler.empty()) sampler = load_sampler(a.sampler);

  const fs::path out = resolve_run_path(a.out_dir);
  fs::create_directories(out);
  for (int i : a.samples) {
    const GridSample& s = samples[static_cast<std::size_t>(i)];
    torch::Tensor probs;
    if (gridgen) {
      torch::NoGradGuard no_grad;
      probs = forward_probabilities(s, *gridgen);
    } else {
      probs = s.target_grids.to(torch::kFloat);
    }
    TrajectorySet pred;
    if (sampler) pred = sample_trajectories(probs, *sampler);
    save_png(render_overlay(s, pred, a.ppc), out / ("overlay_" + std::to_string(i) + ".png"));
    save_png(render_heatmaps(probs, a.ppc, a.columns), out / ("heatmaps_" + std::to_string(i) + ".png"));
  }
  write_echo(root, out / "render.ini");
  std::cout << "rendered " << a.samples.size() << " samples to " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Grid-based multimodal trajectory forecasting", "trajgrid"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "INI file; [subcommand] sections hold option values, flags override");
  app.require_subcommand(1);

  IngestArgs ingest;
  SynthArgs synth;
  PretrainArgs pretrain;
  GridGenArgs gridgen;
  SamplerArgs sampler;
  EvaluateArgs evaluate;
  RenderArgs render;
  add_ingest(app, ingest);
  add_synth(app, synth);
  add_pretrain(app, pretrain);
  add_train_gridgen(app, gridgen);
  add_train_sampler(app, sampler);
  add_evaluate(app, evaluate);
  add_render(app, render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "ingest") return run_ingest(app, ingest);
    if (cmd == "synth") return run_synth(app, synth);
    if (cmd == "pretrain-scene") return run_pretrain(app, pretrain);
    if (cmd == "train-gridgen") return run_train_gridgen(app, gridgen);
    if (cmd == "train-sampler") return run_train_sampler(app, sampler);
    if (cmd == "evaluate") return run_evaluate(app, evaluate);
    if (cmd == "render") return run_render(app, render);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cerr << app.help();
  return kExitValidation;
}

}  // namespace trajgrid
