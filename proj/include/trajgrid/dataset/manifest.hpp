#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace trajgrid {

enum class Split { train, val, test };

Split parse_split(const std::string& name);
const char* to_string(Split split);

/// Plain-text "scene_id split" lines; '#' starts a comment.
std::map<std::string, Split> read_split_manifest(const std::filesystem::path& path);
void write_split_manifest(const std::filesystem::path& path, const std::map<std::string, Split>& splits);

struct SceneEntry {
  std::string scene_id;
  std::filesystem::path annotations;
  std::filesystem::path image;
  std::filesystem::path labels;  // optional label-map raster
};

/// "scene_id annotations image [labels]" lines. Relative paths resolve against the manifest's directory.
std::vector<SceneEntry> read_scene_manifest(const std::filesystem::path& path);
/// Writes entries with paths relative to the manifest's directory when possible.
void write_scene_manifest(const std::filesystem::path& path, const std::vector<SceneEntry>& scenes);

}  // namespace trajgrid
