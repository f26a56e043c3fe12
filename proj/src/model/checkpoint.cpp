#include "trajgrid/model/checkpoint.hpp"

#include "trajgrid/core/error.hpp"

namespace trajgrid {

void save_checkpoint(const std::filesystem::path& path, const std::string& section, const nlohmann::json& config,
                     torch::nn::Module& module) {
  torch::serialize::OutputArchive archive;
  archive.write("format_version", c10::IValue(kCheckpointVersion));
  archive.write("section", c10::IValue(section));
  archive.write("config", c10::IValue(config.dump()));
  torch::serialize::OutputArchive state;
  module.save(state);
  archive.write("state", state);
  try {
    archive.save_to(path.string());
  } catch (const c10::Error&) {
    throw Error(ErrorCode::io, "cannot write checkpoint " + path.string());
  }
}

namespace {

torch::serialize::InputArchive open_archive(const std::filesystem::path& path) {
  torch::serialize::InputArchive archive;
  try {
    archive.load_from(path.string());
  } catch (const c10::Error&) {
    throw Error(ErrorCode::io, "cannot read checkpoint " + path.string());
  }
  return archive;
}

CheckpointHeader header_of(torch::serialize::InputArchive& archive, const std::filesystem::path& path) {
  CheckpointHeader h;
  c10::IValue v;
  if (!archive.try_read("format_version", v)) throw Error(ErrorCode::io, path.string() + " has no version tag");
  h.version = v.toInt();
  if (h.version != kCheckpointVersion) {
    throw Error(ErrorCode::io, path.string() + " has unsupported version " + std::to_string(h.version));
  }
  archive.read("section", v);
  h.section = v.toStringRef();
  archive.read("config", v);
  h.config = nlohmann::json::parse(v.toStringRef());
  return h;
}

}  // namespace

CheckpointHeader read_checkpoint_header(const std::filesystem::path& path) {
  auto archive = open_archive(path);
  return header_of(archive, path);
}

void load_checkpoint(const std::filesystem::path& path, const std::string& section, torch::nn::Module& module) {
  auto archive = open_archive(path);
  const auto h = header_of(archive, path);
  if (h.section != section) {
    throw Error(ErrorCode::config, path.string() + " holds a '" + h.section + "' checkpoint, expected '" + section + "'");
  }
  torch::serialize::InputArchive state;
  archive.read("state", state);
  module.load(state);
}

void save_gridgen(const std::filesystem::path& path, GridGenerator& model) {
  save_checkpoint(path, checkpoint_section::gridgen, nlohmann::json(model->config()), *model);
}

GridGenerator load_gridgen(const std::filesystem::path& path) {
  const auto h = read_checkpoint_header(path);
  GridGenerator model(h.config.get<GridGenConfig>());
  load_checkpoint(path, checkpoint_section::gridgen, *model);
  return model;
}

void save_sampler(const std::filesystem::path& path, TrajectorySampler& model) {
  save_checkpoint(path, checkpoint_section::sampler, nlohmann::json(model->config()), *model);
}

TrajectorySampler load_sampler(const std::filesystem::path& path) {
  const auto h = read_checkpoint_header(path);
  TrajectorySampler model(h.config.get<SamplerConfig>());
  load_checkpoint(path, checkpoint_section::sampler, *model);
  return model;
}

}  // namespace trajgrid
