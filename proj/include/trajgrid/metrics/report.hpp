#pragma once

#include <filesystem>
#include <json.hpp>

#include "trajgrid/metrics/metrics.hpp"

namespace trajgrid {

struct MetricsReport {
  double made_px = 0;          // mean over samples of per-sample mADE
  double mfde_px = 0;
  CSReport cs;
  double obstacle_free_pct = 0;
  std::uint64_t samples = 0;
  int k = 0;
};

nlohmann::json to_json(const MetricsReport& report);
void write_report(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace trajgrid
