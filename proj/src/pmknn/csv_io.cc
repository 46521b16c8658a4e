//
// Copyright 2026 The pmknn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pmknn/csv_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace pmknn {
namespace {

absl::Status LineError(size_t line, absl::string_view what) {
  return absl::DataLossError(absl::StrCat("line ", line, ": ", what));
}

bool ParseDouble(absl::string_view s, double* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end && std::isfinite(*out);
}

bool ParseInt(absl::string_view s, int64_t* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

// Calls fn(line_number, fields) for every nonblank line after the header.
template <typename Fn>
absl::Status ForEachRow(absl::string_view text, absl::string_view header,
                        Fn fn) {
  size_t line_no = 0;
  bool seen_header = false;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    if (!seen_header) {
      if (absl::StripAsciiWhitespace(line) != header) {
        return LineError(line_no, absl::StrCat("expected header '", header,
                                               "', got '", line, "'"));
      }
      seen_header = true;
      continue;
    }
    if (absl::Status s = fn(line_no, SplitCsvLine(line)); !s.ok()) return s;
  }
  if (!seen_header) {
    return absl::DataLossError(
        absl::StrCat("missing header '", header, "'"));
  }
  return absl::OkStatus();
}

absl::Status WithPath(const absl::Status& s, const std::string& path) {
  if (s.ok()) return s;
  return absl::Status(s.code(), absl::StrCat(path, ": ", s.message()));
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<absl::string_view> SplitCsvLine(absl::string_view line) {
  std::vector<absl::string_view> out = absl::StrSplit(line, ',');
  for (auto& f : out) f = absl::StripAsciiWhitespace(f);
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat(path, ": cannot open for reading"));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    return absl::UnavailableError(absl::StrCat(path, ": read failed"));
  }
  return ss.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat(path, ": cannot open for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    return absl::UnavailableError(absl::StrCat(path, ": write failed"));
  }
  return absl::OkStatus();
}

std::string PointsToCsv(const std::vector<DataObject>& objects) {
  std::string out = "id,x,y\n";
  for (const DataObject& o : objects) {
    absl::StrAppend(&out, o.id, ",", FormatDouble(o.location.x), ",",
                    FormatDouble(o.location.y), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<DataObject>> ParsePointsCsv(
    absl::string_view text, bool rescale, const Rect& data_space) {
  std::vector<DataObject> objects;
  std::vector<size_t> lines;
  std::unordered_set<int64_t> ids;
  absl::Status s = ForEachRow(
      text, "id,x,y",
      [&](size_t line, const std::vector<absl::string_view>& f) -> absl::Status {
        if (f.size() != 3) {
          return LineError(line, absl::StrCat("expected 3 fields, got ",
                                              f.size()));
        }
        DataObject o;
        if (!ParseInt(f[0], &o.id)) {
          return LineError(line, absl::StrCat("bad id '", f[0], "'"));
        }
        if (!ParseDouble(f[1], &o.location.x) ||
            !ParseDouble(f[2], &o.location.y)) {
          return LineError(line, "bad coordinate");
        }
        if (!ids.insert(o.id).second) {
          return LineError(line, absl::StrCat("duplicate id ", o.id));
        }
        objects.push_back(o);
        lines.push_back(line);
        return absl::OkStatus();
      });
  if (!s.ok()) return s;

  if (rescale && !objects.empty()) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x, max_x = -min_x, max_y = -min_x;
    for (const DataObject& o : objects) {
      min_x = std::min(min_x, o.location.x);
      min_y = std::min(min_y, o.location.y);
      max_x = std::max(max_x, o.location.x);
      max_y = std::max(max_y, o.location.y);
    }
    const double extent = std::max(max_x - min_x, max_y - min_y);
    const double scale =
        extent > 0.0 ? std::min(data_space.Width(), data_space.Height()) / extent
                     : 0.0;
    const Point anchor = extent > 0.0 ? Point{data_space.min_x,
                                              data_space.min_y}
                                      : data_space.Center();
    for (DataObject& o : objects) {
      o.location = {
          std::min(anchor.x + (o.location.x - min_x) * scale, data_space.max_x),
          std::min(anchor.y + (o.location.y - min_y) * scale,
                   data_space.max_y)};
    }
  }
  for (size_t i = 0; i < objects.size(); ++i) {
    if (!data_space.Contains(objects[i].location)) {
      return LineError(lines[i],
                       "point outside the data space (set rescale to map "
                       "the input onto it)");
    }
  }
  return objects;
}

absl::StatusOr<std::vector<DataObject>> ReadPointsCsv(const std::string& path,
                                                      bool rescale,
                                                      const Rect& data_space) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<DataObject>> objects =
      ParsePointsCsv(*text, rescale, data_space);
  if (!objects.ok()) return WithPath(objects.status(), path);
  return objects;
}

absl::Status WritePointsCsv(const std::string& path,
                            const std::vector<DataObject>& objects) {
  return WriteFile(path, PointsToCsv(objects));
}

std::string TrajectoriesToCsv(const std::vector<Trajectory>& trajectories) {
  std::string out = "traj_id,seq,x,y\n";
  for (size_t t = 0; t < trajectories.size(); ++t) {
    for (size_t i = 0; i < trajectories[t].size(); ++i) {
      absl::StrAppend(&out, t, ",", i, ",",
                      FormatDouble(trajectories[t][i].x), ",",
                      FormatDouble(trajectories[t][i].y), "\n");
    }
  }
  return out;
}

absl::StatusOr<std::vector<Trajectory>> ParseTrajectoriesCsv(
    absl::string_view text, const Rect& data_space) {
  std::vector<Trajectory> out;
  int64_t current_id = -1;
  absl::Status s = ForEachRow(
      text, "traj_id,seq,x,y",
      [&](size_t line, const std::vector<absl::string_view>& f) -> absl::Status {
        if (f.size() != 4) {
          return LineError(line, absl::StrCat("expected 4 fields, got ",
                                              f.size()));
        }
        int64_t id, seq;
        Point p;
        if (!ParseInt(f[0], &id) || !ParseInt(f[1], &seq)) {
          return LineError(line, "bad traj_id or seq");
        }
        if (!ParseDouble(f[2], &p.x) || !ParseDouble(f[3], &p.y)) {
          return LineError(line, "bad coordinate");
        }
        if (!data_space.Contains(p)) {
          return LineError(line, "vertex outside the data space");
        }
        if (id != current_id) {
          if (id != current_id + 1) {
            return LineError(line, absl::StrCat("expected traj_id ",
                                                current_id + 1, ", got ", id));
          }
          current_id = id;
          out.emplace_back();
        }
        if (seq != static_cast<int64_t>(out.back().size())) {
          return LineError(line, absl::StrCat("expected seq ",
                                              out.back().size(), ", got ",
                                              seq));
        }
        out.back().push_back(p);
        return absl::OkStatus();
      });
  if (!s.ok()) return s;
  return out;
}

absl::StatusOr<std::vector<Trajectory>> ReadTrajectoriesCsv(
    const std::string& path, const Rect& data_space) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<Trajectory>> t =
      ParseTrajectoriesCsv(*text, data_space);
  if (!t.ok()) return WithPath(t.status(), path);
  return t;
}

absl::Status WriteTrajectoriesCsv(
    const std::string& path, const std::vector<Trajectory>& trajectories) {
  return WriteFile(path, TrajectoriesToCsv(trajectories));
}

}  // namespace pmknn
