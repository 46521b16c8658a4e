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

#include "pmknn/run_config.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <type_traits>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "pmknn/csv_io.h"

namespace pmknn {
namespace {

using Setter = std::function<absl::Status(absl::string_view, RunConfig&)>;

absl::Status Bad(absl::string_view value, absl::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("cannot parse '", value, "' as ", expected));
}

template <typename T>
absl::Status ParseNumber(absl::string_view s, T* out, absl::string_view what) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  if (s.empty() || ec != std::errc() || ptr != end) return Bad(s, what);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(*out)) return Bad(s, what);
  }
  return absl::OkStatus();
}

absl::Status ParseBool(absl::string_view s, bool* out) {
  const std::string v = absl::AsciiStrToLower(s);
  if (v == "true" || v == "1" || v == "yes") {
    *out = true;
  } else if (v == "false" || v == "0" || v == "no") {
    *out = false;
  } else {
    return Bad(s, "a boolean");
  }
  return absl::OkStatus();
}

std::vector<absl::string_view> Items(absl::string_view s) {
  std::vector<absl::string_view> out;
  for (absl::string_view item : absl::StrSplit(s, ',')) {
    item = absl::StripAsciiWhitespace(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
Setter Number(std::function<T&(RunConfig&)> field, absl::string_view what) {
  return [field, what](absl::string_view v, RunConfig& c) {
    return ParseNumber(v, &field(c), what);
  };
}

template <typename T>
Setter NumberList(std::function<std::vector<T>&(RunConfig&)> field,
                  absl::string_view what) {
  return [field, what](absl::string_view v, RunConfig& c) -> absl::Status {
    std::vector<T> parsed;
    for (absl::string_view item : Items(v)) {
      T x;
      if (absl::Status s = ParseNumber(item, &x, what); !s.ok()) return s;
      parsed.push_back(x);
    }
    field(c) = std::move(parsed);
    return absl::OkStatus();
  };
}

absl::Status ParseProfiles(absl::string_view v, std::vector<NamedProfile>* out) {
  std::vector<NamedProfile> parsed;
  for (absl::string_view item : Items(v)) {
    std::vector<absl::string_view> parts = absl::StrSplit(item, '/');
    if (parts.size() != 4) return Bad(item, "a profile cl/cl_r/k/k_r");
    NamedProfile p;
    for (auto& part : parts) part = absl::StripAsciiWhitespace(part);
    if (!ParseNumber(parts[0], &p.cl, "a real").ok() ||
        !ParseNumber(parts[1], &p.cl_r, "a real").ok() ||
        !ParseNumber(parts[2], &p.k, "an integer").ok() ||
        !ParseNumber(parts[3], &p.k_r, "an integer").ok()) {
      return Bad(item, "a profile cl/cl_r/k/k_r");
    }
    parsed.push_back(p);
  }
  *out = std::move(parsed);
  return absl::OkStatus();
}

const std::vector<std::pair<absl::string_view, Setter>>& Table() {
  using C = RunConfig;
  static const auto* kTable =
      new std::vector<std::pair<absl::string_view, Setter>>{
          {"data.kind",
           [](absl::string_view v, C& c) -> absl::Status {
             absl::StatusOr<DataKind> k = ParseDataKind(v);
             if (!k.ok()) return k.status();
             c.sweep.data.kind = *k;
             return absl::OkStatus();
           }},
          {"data.n", Number<int64_t>([](C& c) -> int64_t& {
             return c.sweep.data.n;
           }, "an integer")},
          {"data.seed", Number<uint64_t>([](C& c) -> uint64_t& {
             return c.sweep.data.seed;
           }, "an unsigned integer")},
          {"data.zipf_exponent", Number<double>([](C& c) -> double& {
             return c.sweep.data.zipf_exponent;
           }, "a real")},
          {"data.path",
           [](absl::string_view v, C& c) {
             c.sweep.data.path = std::string(v);
             return absl::OkStatus();
           }},
          {"data.rescale",
           [](absl::string_view v, C& c) {
             return ParseBool(v, &c.sweep.data.rescale);
           }},
          {"traj.count", Number<int>([](C& c) -> int& {
             return c.sweep.trajectories.count;
           }, "an integer")},
          {"traj.length", Number<double>([](C& c) -> double& {
             return c.sweep.trajectories.total_length;
           }, "a real")},
          {"traj.segment_min", Number<double>([](C& c) -> double& {
             return c.sweep.trajectories.segment_min;
           }, "a real")},
          {"traj.segment_max", Number<double>([](C& c) -> double& {
             return c.sweep.trajectories.segment_max;
           }, "a real")},
          {"traj.seed", Number<uint64_t>([](C& c) -> uint64_t& {
             return c.sweep.trajectories.seed;
           }, "an unsigned integer")},
          {"traj.path",
           [](absl::string_view v, C& c) {
             c.sweep.trajectory_path = std::string(v);
             return absl::OkStatus();
           }},
          {"sweep.area_pct",
           NumberList<double>([](C& c) -> std::vector<double>& {
             return c.sweep.area_pct;
           }, "a real")},
          {"sweep.ratio", NumberList<double>([](C& c) -> std::vector<double>& {
             return c.sweep.ratio;
           }, "a real")},
          {"sweep.profiles",
           [](absl::string_view v, C& c) {
             return ParseProfiles(v, &c.sweep.profiles);
           }},
          {"sweep.cl", NumberList<double>([](C& c) -> std::vector<double>& {
             return c.sweep.cl;
           }, "a real")},
          {"sweep.cl_r", NumberList<double>([](C& c) -> std::vector<double>& {
             return c.sweep.cl_r;
           }, "a real")},
          {"sweep.k", NumberList<int>([](C& c) -> std::vector<int>& {
             return c.sweep.k;
           }, "an integer")},
          {"sweep.k_r", NumberList<int>([](C& c) -> std::vector<int>& {
             return c.sweep.k_r;
           }, "an integer")},
          {"sweep.delta", NumberList<double>([](C& c) -> std::vector<double>& {
             return c.sweep.delta;
           }, "a real")},
          {"sweep.attack",
           [](absl::string_view v, C& c) -> absl::Status {
             std::vector<AttackMode> modes;
             for (absl::string_view item : Items(v)) {
               absl::StatusOr<AttackMode> m = ParseAttackMode(item);
               if (!m.ok()) return m.status();
               modes.push_back(*m);
             }
             c.sweep.attacks = std::move(modes);
             return absl::OkStatus();
           }},
          {"run.scheduler",
           [](absl::string_view v, C& c) -> absl::Status {
             absl::StatusOr<Scheduler> s = ParseScheduler(v);
             if (!s.ok()) return s.status();
             c.sweep.scheduler = *s;
             return absl::OkStatus();
           }},
          {"run.repeats", Number<int>([](C& c) -> int& {
             return c.sweep.repeats;
           }, "an integer")},
          {"run.speed_kmh", Number<double>([](C& c) -> double& {
             return c.sweep.speed_kmh;
           }, "a real")},
          {"run.meters_per_unit", Number<double>([](C& c) -> double& {
             return c.sweep.meters_per_unit;
           }, "a real")},
          {"run.sample_step", Number<double>([](C& c) -> double& {
             return c.sweep.sample_step;
           }, "a real")},
          {"run.audit_fraction", Number<double>([](C& c) -> double& {
             return c.sweep.audit_fraction;
           }, "a real")},
          {"run.area_samples", Number<int64_t>([](C& c) -> int64_t& {
             return c.sweep.area_samples;
           }, "an integer")},
          {"run.timing",
           [](absl::string_view v, C& c) {
             return ParseBool(v, &c.sweep.record_timing);
           }},
          {"run.seed", Number<uint64_t>([](C& c) -> uint64_t& {
             return c.sweep.seed;
           }, "an unsigned integer")},
          {"run.threads", Number<int>([](C& c) -> int& {
             return c.sweep.threads;
           }, "an integer")},
          {"output.results",
           [](absl::string_view v, C& c) {
             c.results_path = std::string(v);
             return absl::OkStatus();
           }},
      };
  return *kTable;
}

}  // namespace

std::vector<absl::string_view> RunConfigBuilder::Keys() {
  std::vector<absl::string_view> keys;
  for (const auto& [key, setter] : Table()) keys.push_back(key);
  return keys;
}

void RunConfigBuilder::Set(absl::string_view key, absl::string_view value,
                           absl::string_view origin) {
  key = absl::StripAsciiWhitespace(key);
  value = absl::StripAsciiWhitespace(value);
  for (const auto& [name, setter] : Table()) {
    if (name != key) continue;
    if (absl::Status s = setter(value, config_); !s.ok()) {
      errors_.push_back(absl::StrCat(origin, ": ", key, ": ", s.message()));
    }
    return;
  }
  errors_.push_back(absl::StrCat(origin, ": unknown key '", key, "'"));
}

void RunConfigBuilder::LoadText(absl::string_view text,
                                absl::string_view origin) {
  size_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const std::string where = absl::StrCat(origin, ":", line_no);
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      errors_.push_back(absl::StrCat(where, ": expected key = value"));
      continue;
    }
    Set(line.substr(0, eq), line.substr(eq + 1), where);
  }
}

absl::Status RunConfigBuilder::LoadFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  LoadText(*text, path);
  return absl::OkStatus();
}

std::vector<std::string> RunConfigBuilder::Problems() const {
  std::vector<std::string> all = errors_;
  for (std::string& e : config_.sweep.Validate()) all.push_back(std::move(e));
  return all;
}

absl::StatusOr<RunConfig> RunConfigBuilder::Build() const {
  const std::vector<std::string> problems = Problems();
  if (!problems.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(problems, "\n"));
  }
  return config_;
}

}  // namespace pmknn
