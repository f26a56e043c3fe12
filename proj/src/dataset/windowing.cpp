#include "trajgrid/dataset/windowing.hpp"

#include "trajgrid/core/error.hpp"
#include "trajgrid/core/raster.hpp"

namespace trajgrid {

GridSample make_sample(const PastWindow& past_world, const FutureWindow& future_world, const RgbImage& scene,
                       const GridGeometry& geom, SampleMeta meta) {
  if (past_world.positions.empty()) throw Error(ErrorCode::spec, "past window is empty");
  const Vec2 anchor = past_world.positions.back();
  const auto past = to_agent_frame(past_world, anchor);
  const auto future = to_agent_frame(future_world, anchor);

  GridSample s;
  s.past_grid = rasterize_past(past, geom);
  auto target = rasterize_target(future, geom);
  s.target_grids = std::move(target.grids);
  s.scene_grid = crop_scene(scene, anchor, geom);
  s.past_xy = past.positions;
  s.future_xy = future.positions;
  s.anchor_world = anchor;
  s.geometry = geom;
  s.meta = std::move(meta);
  s.meta.degenerate = target.degenerate;
  return s;
}

std::vector<GridSample> window_samples(const std::vector<Trajectory>& tracks, const WindowConfig& cfg,
                                       const GridGeometry& geom, const RgbImage& scene,
                                       const std::string& scene_id) {
  if (cfg.past_steps < 1 || cfg.future_steps < 1 || cfg.stride_frames < 1) {
    throw Error(ErrorCode::config, "window lengths and stride must be positive");
  }
  std::vector<GridSample> out;
  const auto span = static_cast<std::size_t>(cfg.past_steps + cfg.future_steps);
  for (const auto& track : tracks) {
    if (track.points.empty()) continue;
    // Split the strided resampling into unbroken chains.
    std::vector<std::vector<const TrackPoint*>> chains(1);
    const auto f0 = track.points.front().frame;
    for (const auto& p : track.points) {
      if ((p.frame - f0) % cfg.stride_frames != 0) continue;
      auto& chain = chains.back();
      if (!chain.empty() && p.frame - chain.back()->frame != cfg.stride_frames) chains.emplace_back();
      chains.back().push_back(&p);
    }
    for (const auto& chain : chains) {
      if (chain.size() < span) continue;
      for (std::size_t start = 0; start + span <= chain.size(); ++start) {
        PastWindow past;
        FutureWindow future;
        for (int i = 0; i < cfg.past_steps; ++i) past.positions.push_back(chain[start + i]->position);
        for (int i = 0; i < cfg.future_steps; ++i) {
          future.positions.push_back(chain[start + cfg.past_steps + i]->position);
        }
        SampleMeta meta;
        meta.scene_id = scene_id;
        meta.agent_id = track.agent_id;
        meta.frame = chain[start + cfg.past_steps - 1]->frame;
        out.push_back(make_sample(past, future, scene, geom, std::move(meta)));
      }
    }
  }
  return out;
}

}  // namespace trajgrid
