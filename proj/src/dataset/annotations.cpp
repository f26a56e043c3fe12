#include "trajgrid/dataset/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

namespace {

std::vector<std::string> tokenize(const std::string& line, std::size_t line_no) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    if (line[i] == '"') {
      const auto close = line.find('"', i + 1);
      if (close == std::string::npos) throw ParseError(line_no, "unterminated quoted label");
      tokens.push_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      const auto start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no, const char* field) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line_no, std::string("field ") + field + " is not an integer: '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, std::size_t line_no, const char* field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line_no, std::string("field ") + field + " is not a number: '" + s + "'");
  }
  return v;
}

bool parse_flag(const std::string& s, std::size_t line_no, const char* field) {
  const auto v = parse_int(s, line_no, field);
  if (v != 0 && v != 1) throw ParseError(line_no, std::string("flag ") + field + " must be 0 or 1");
  return v == 1;
}

}  // namespace

std::vector<AnnotationRow> parse_annotations(std::istream& in) {
  std::vector<AnnotationRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    if (tokens.size() != 10) {
      throw ParseError(line_no, "expected 10 fields, got " + std::to_string(tokens.size()));
    }
    AnnotationRow r;
    r.track_id = parse_int(tokens[0], line_no, "track_id");
    r.xmin = parse_real(tokens[1], line_no, "xmin");
    r.ymin = parse_real(tokens[2], line_no, "ymin");
    r.xmax = parse_real(tokens[3], line_no, "xmax");
    r.ymax = parse_real(tokens[4], line_no, "ymax");
    r.frame = parse_int(tokens[5], line_no, "frame");
    r.lost = parse_flag(tokens[6], line_no, "lost");
    r.occluded = parse_flag(tokens[7], line_no, "occluded");
    r.generated = parse_flag(tokens[8], line_no, "generated");
    r.label = tokens[9];
    if (r.xmin > r.xmax || r.ymin > r.ymax) throw ParseError(line_no, "malformed bounding box");
    if (r.frame < 0) throw ParseError(line_no, "negative frame");
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_annotations(std::ostream& out, const std::vector<AnnotationRow>& rows) {
  const auto precision = out.precision(10);
  for (const auto& r : rows) {
    out << r.track_id << ' ' << r.xmin << ' ' << r.ymin << ' ' << r.xmax << ' ' << r.ymax << ' ' << r.frame << ' '
        << int(r.lost) << ' ' << int(r.occluded) << ' ' << int(r.generated) << " \"" << r.label << "\"\n";
  }
  out.precision(precision);
}

std::vector<Trajectory> build_tracks(const std::vector<AnnotationRow>& rows, std::int64_t annotation_stride) {
  std::map<std::int64_t, std::vector<const AnnotationRow*>> by_track;
  for (const auto& r : rows) by_track[r.track_id].push_back(&r);

  std::vector<Trajectory> out;
  for (auto& [track_id, track_rows] : by_track) {
    std::stable_sort(track_rows.begin(), track_rows.end(),
                     [](const auto* a, const auto* b) { return a->frame < b->frame; });

    std::int64_t stride = annotation_stride;
    if (stride <= 0) {
      stride = std::numeric_limits<std::int64_t>::max();
      for (std::size_t i = 1; i < track_rows.size(); ++i) {
        const auto gap = track_rows[i]->frame - track_rows[i - 1]->frame;
        if (gap > 0) stride = std::min(stride, gap);
      }
    }

    std::vector<Trajectory> segments;
    for (const auto* r : track_rows) {
      if (r->lost) continue;
      const bool contiguous = !segments.empty() && r->frame - segments.back().points.back().frame == stride;
      const bool duplicate = !segments.empty() && r->frame == segments.back().points.back().frame;
      if (duplicate) continue;
      if (!contiguous) {
        Trajectory t;
        t.label = r->label;
        segments.push_back(std::move(t));
      }
      segments.back().points.push_back({r->frame, r->center()});
    }
    for (std::size_t k = 0; k < segments.size(); ++k) {
      segments[k].agent_id = segments.size() == 1 ? std::to_string(track_id)
                                                  : std::to_string(track_id) + "#" + std::to_string(k);
      out.push_back(std::move(segments[k]));
    }
  }
  return out;
}

}  // namespace trajgrid
