#include "trajgrid/dataset/manifest.hpp"

#include <fstream>
#include <sstream>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

Split parse_split(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "val" || name == "validation") return Split::val;
  if (name == "test") return Split::test;
  throw Error(ErrorCode::config, "unknown split '" + name + "'");
}

const char* to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "train";
}

namespace {

std::vector<std::vector<std::string>> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open manifest " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(f);
    if (!fields.empty()) out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace

std::map<std::string, Split> read_split_manifest(const std::filesystem::path& path) {
  std::map<std::string, Split> out;
  for (const auto& f : read_lines(path)) {
    if (f.size() != 2) throw Error(ErrorCode::config, "split manifest lines need 'scene_id split'");
    out[f[0]] = parse_split(f[1]);
  }
  return out;
}

void write_split_manifest(const std::filesystem::path& path, const std::map<std::string, Split>& splits) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  for (const auto& [id, split] : splits) out << id << ' ' << to_string(split) << '\n';
}

std::vector<SceneEntry> read_scene_manifest(const std::filesystem::path& path) {
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  std::vector<SceneEntry> out;
  for (const auto& f : read_lines(path)) {
    if (f.size() != 3 && f.size() != 4) {
      throw Error(ErrorCode::config, "scene manifest lines need 'scene_id annotations image [labels]'");
    }
    SceneEntry e{f[0], resolve(f[1]), resolve(f[2]), {}};
    if (f.size() == 4) e.labels = resolve(f[3]);
    out.push_back(std::move(e));
  }
  return out;
}

void write_scene_manifest(const std::filesystem::path& path, const std::vector<SceneEntry>& scenes) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  const auto base = path.parent_path();
  auto rel = [&](const std::filesystem::path& p) {
    if (p.empty()) return std::string();
    const auto from = std::filesystem::absolute(base.empty() ? std::filesystem::path(".") : base);
    const auto r = std::filesystem::absolute(p).lexically_relative(from);
    // Paths outside the manifest's directory stay absolute.
    if (r.empty() || *r.begin() == "..") return std::filesystem::absolute(p).lexically_normal().string();
    return r.string();
  };
  for (const auto& s : scenes) {
    out << s.scene_id << ' ' << rel(s.annotations) << ' ' << rel(s.image);
    if (!s.labels.empty()) out << ' ' << rel(s.labels);
    out << '\n';
  }
}

}  // namespace trajgrid
