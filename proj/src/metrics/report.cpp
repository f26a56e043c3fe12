#include "trajgrid/metrics/report.hpp"

#include <fstream>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

nlohmann::json to_json(const MetricsReport& r) {
  return {{"made_px", r.made_px},
          {"mfde_px", r.mfde_px},
          {"cs_pct_path", r.cs.pct_path},
          {"cs_pct_terrain", r.cs.pct_terrain},
          {"cs_pct_obstacle", r.cs.pct_obstacle},
          {"cs_pct_out_of_image", r.cs.pct_out_of_image},
          {"cs_points", r.cs.points},
          {"obstacle_free_pct", r.obstacle_free_pct},
          {"samples", r.samples},
          {"k", r.k}};
}

void write_report(const std::filesystem::path& path, const MetricsReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write report " + path.string());
  out << to_json(report).dump(2) << '\n';
}

}  // namespace trajgrid
