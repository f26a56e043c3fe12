#pragma once

#include <torch/torch.h>

#include <filesystem>
#include <json.hpp>
#include <string>

#include "trajgrid/model/gridgen.hpp"
#include "trajgrid/model/sampler.hpp"

namespace trajgrid {

inline constexpr std::int64_t kCheckpointVersion = 1;

namespace checkpoint_section {
inline constexpr const char* gridgen = "gridgen";
inline constexpr const char* sampler = "sampler";
inline constexpr const char* scene_encoder = "scene_encoder";
}  // namespace checkpoint_section

struct CheckpointHeader {
  std::int64_t version = 0;
  std::string section;
  nlohmann::json config;
};

/// Container: version tag, section tag, JSON config echo, then the module's named parameters
/// and buffers under "state".
void save_checkpoint(const std::filesystem::path& path, const std::string& section, const nlohmann::json& config,
                     torch::nn::Module& module);
CheckpointHeader read_checkpoint_header(const std::filesystem::path& path);
/// Loads parameters into an already-constructed module; the section tag must match.
void load_checkpoint(const std::filesystem::path& path, const std::string& section, torch::nn::Module& module);

void save_gridgen(const std::filesystem::path& path, GridGenerator& model);
GridGenerator load_gridgen(const std::filesystem::path& path);
void save_sampler(const std::filesystem::path& path, TrajectorySampler& model);
TrajectorySampler load_sampler(const std::filesystem::path& path);

}  // namespace trajgrid
