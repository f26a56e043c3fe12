#pragma once

#include <filesystem>
#include <string>

#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

/// "paper": N = 128, 7 U-Net levels, 9 residual blocks, 11x11 ConvLSTM kernel.
/// "desk":  N = 32, 5 U-Net levels, narrower encoders, 5x5 ConvLSTM kernel; trains on one CPU core.
GridGenConfig gridgen_preset(const std::string& name);
SamplerConfig sampler_preset(const std::string& name, const GridGenConfig& gridgen);
double preset_scale(const std::string& name);

/// Environment variable naming the root that relative run directories resolve against.
inline constexpr const char* kRunRootEnv = "TRAJGRID_RUN_ROOT";

std::filesystem::path resolve_run_path(const std::filesystem::path& path);

}  // namespace trajgrid
