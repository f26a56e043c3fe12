#include "trajgrid/cli/config.hpp"

#include <cstdlib>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

GridGenConfig gridgen_preset(const std::string& name) {
  GridGenConfig c;
  if (name == "paper") return c;
  if (name == "desk") {
    c.grid_size = 32;
    c.unet_blocks = 5;
    c.unet_base_channels = 16;
    c.resnet_base_channels = 16;
    c.convlstm_kernel = 5;
    c.positive_class_weight = 100.0;
    return c;
  }
  throw Error(ErrorCode::config, "unknown preset '" + name + "' (expected paper or desk)");
}

SamplerConfig sampler_preset(const std::string& name, const GridGenConfig& gridgen) {
  SamplerConfig c;
  c.future_steps = gridgen.future_steps;
  c.grid_size = gridgen.grid_size;
  c.convlstm_hidden = gridgen.convlstm_hidden;
  c.convlstm_kernel = gridgen.convlstm_kernel;
  if (name == "desk") {
    c.pool_size = 8;
    c.fc_hidden = 256;
  } else if (name != "paper") {
    throw Error(ErrorCode::config, "unknown preset '" + name + "' (expected paper or desk)");
  }
  return c;
}

double preset_scale(const std::string& name) {
  if (name == "paper" || name == "desk") return 10.0;
  throw Error(ErrorCode::config, "unknown preset '" + name + "'");
}

std::filesystem::path resolve_run_path(const std::filesystem::path& path) {
  if (path.empty() || path.is_absolute()) return path;
  if (const char* root = std::getenv(kRunRootEnv); root && *root) return std::filesystem::path(root) / path;
  return path;
}

}  // namespace trajgrid
