#include "trajgrid/dataset/sample_store.hpp"

#include <json.hpp>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

constexpr std::int64_t kStoreVersion = 1;

torch::Tensor points_tensor(const std::vector<GridSample>& samples, bool past) {
  const auto steps = past ? samples.front().past_xy.size() : samples.front().future_xy.size();
  auto t = torch::zeros({static_cast<std::int64_t>(samples.size()), static_cast<std::int64_t>(steps), 2}, torch::kDouble);
  auto acc = t.accessor<double, 3>();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& pts = past ? samples[i].past_xy : samples[i].future_xy;
    if (pts.size() != steps) throw Error(ErrorCode::shape, "samples in a store must share window lengths");
    for (std::size_t k = 0; k < steps; ++k) {
      acc[i][k][0] = pts[k].x;
      acc[i][k][1] = pts[k].y;
    }
  }
  return t;
}

}  // namespace

void save_samples(const std::filesystem::path& path, const std::vector<GridSample>& samples) {
  torch::serialize::OutputArchive archive;
  nlohmann::json meta;
  meta["version"] = kStoreVersion;
  meta["count"] = samples.size();
  if (!samples.empty()) {
    const auto& g = samples.front().geometry;
    meta["grid_size"] = g.size;
    meta["scale"] = g.scale;
    std::vector<torch::Tensor> past, scene, target;
    auto anchors = torch::zeros({static_cast<std::int64_t>(samples.size()), 2}, torch::kDouble);
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      if (!(s.geometry == g)) throw Error(ErrorCode::shape, "samples in a store must share geometry");
      past.push_back(s.past_grid.to(torch::kUInt8));
      scene.push_back(s.scene_grid.to(torch::kFloat));
      target.push_back(s.target_grids.to(torch::kUInt8));
      anchors[i][0] = s.anchor_world.x;
      anchors[i][1] = s.anchor_world.y;
      entries.push_back({{"scene", s.meta.scene_id},
                         {"agent", s.meta.agent_id},
                         {"frame", s.meta.frame},
                         {"rotation", s.meta.rotation_deg},
                         {"degenerate", s.meta.degenerate}});
    }
    meta["samples"] = std::move(entries);
    archive.write("past", torch::stack(past));
    archive.write("scene", torch::stack(scene));
    archive.write("target", torch::stack(target));
    archive.write("past_xy", points_tensor(samples, true));
    archive.write("future_xy", points_tensor(samples, false));
    archive.write("anchor", anchors);
  }
  archive.write("meta", c10::IValue(meta.dump()));
  try {
    archive.save_to(path.string());
  } catch (const c10::Error& e) {
    throw Error(ErrorCode::io, "cannot write sample store " + path.string());
  }
}

std::vector<GridSample> load_samples(const std::filesystem::path& path) {
  torch::serialize::InputArchive archive;
  try {
    archive.load_from(path.string());
  } catch (const c10::Error&) {
    throw Error(ErrorCode::io, "cannot read sample store " + path.string());
  }
  c10::IValue meta_value;
  archive.read("meta", meta_value);
  const auto meta = nlohmann::json::parse(meta_value.toStringRef());
  if (meta.at("version").get<std::int64_t>() != kStoreVersion) {
    throw Error(ErrorCode::io, "unsupported sample store version in " + path.string());
  }
  const auto count = meta.at("count").get<std::size_t>();
  std::vector<GridSample> out;
  if (count == 0) return out;

  torch::Tensor past, scene, target, past_xy, future_xy, anchors;
  archive.read("past", past);
  archive.read("scene", scene);
  archive.read("target", target);
  archive.read("past_xy", past_xy);
  archive.read("future_xy", future_xy);
  archive.read("anchor", anchors);
  GridGeometry geom{meta.at("grid_size").get<int>(), meta.at("scale").get<double>()};
  auto pa = past_xy.accessor<double, 3>();
  auto fa = future_xy.accessor<double, 3>();
  auto aa = anchors.accessor<double, 2>();
  const auto& entries = meta.at("samples");
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GridSample s;
    const auto idx = static_cast<std::int64_t>(i);
    s.past_grid = past[idx].to(torch::kBool).clone();
    s.scene_grid = scene[idx].clone();
    s.target_grids = target[idx].to(torch::kBool).clone();
    for (std::int64_t k = 0; k < past_xy.size(1); ++k) s.past_xy.push_back({pa[idx][k][0], pa[idx][k][1]});
    for (std::int64_t k = 0; k < future_xy.size(1); ++k) s.future_xy.push_back({fa[idx][k][0], fa[idx][k][1]});
    s.anchor_world = {aa[idx][0], aa[idx][1]};
    s.geometry = geom;
    const auto& e = entries.at(i);
    s.meta.scene_id = e.at("scene").get<std::string>();
    s.meta.agent_id = e.at("agent").get<std::string>();
    s.meta.frame = e.at("frame").get<std::int64_t>();
    s.meta.rotation_deg = e.at("rotation").get<double>();
    s.meta.degenerate = e.at("degenerate").get<bool>();
    out.push_back(std::move(s));
  }
  return out;
}

SampleBatch collate(const std::vector<const GridSample*>& samples) {
  if (samples.empty()) throw Error(ErrorCode::shape, "cannot collate an empty batch");
  std::vector<torch::Tensor> past, scene, target;
  const auto steps = static_cast<std::int64_t>(samples.front()->future_xy.size());
  auto future = torch::zeros({static_cast<std::int64_t>(samples.size()), steps, 2}, torch::kFloat);
  auto fa = future.accessor<float, 3>();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = *samples[i];
    past.push_back(s.past_grid.to(torch::kFloat));
    scene.push_back(s.scene_grid.to(torch::kFloat));
    target.push_back(s.target_grids.to(torch::kBool));
    if (static_cast<std::int64_t>(s.future_xy.size()) != steps) {
      throw Error(ErrorCode::shape, "batch samples must share t_f");
    }
    for (std::int64_t k = 0; k < steps; ++k) {
      fa[i][k][0] = static_cast<float>(s.future_xy[k].x / s.geometry.scale);
      fa[i][k][1] = static_cast<float>(s.future_xy[k].y / s.geometry.scale);
    }
  }
  return {torch::stack(past), torch::stack(scene), torch::stack(target), future};
}

SampleBatch collate(const std::vector<GridSample>& samples) {
  std::vector<const GridSample*> ptrs;
  for (const auto& s : samples) ptrs.push_back(&s);
  return collate(ptrs);
}

}  // namespace trajgrid
