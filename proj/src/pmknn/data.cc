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

#include "pmknn/data.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "pmknn/csv_io.h"
#include "pmknn/random.h"

namespace pmknn {
namespace {

std::vector<DataObject> Uniform(int64_t n, Rng& rng) {
  std::vector<DataObject> out;
  out.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    const double x = rng.Uniform(0.0, kDataSpaceSide);
    const double y = rng.Uniform(0.0, kDataSpaceSide);
    out.push_back({i, {x, y}});
  }
  return out;
}

std::vector<DataObject> Zipf(int64_t n, double exponent, Rng& rng) {
  constexpr int kCells = kZipfGridCells * kZipfGridCells;
  // Random cell for each popularity rank.
  std::vector<int> cell_of_rank(kCells);
  std::iota(cell_of_rank.begin(), cell_of_rank.end(), 0);
  for (int i = kCells - 1; i > 0; --i) {
    std::swap(cell_of_rank[i], cell_of_rank[rng.Below(i + 1)]);
  }
  std::vector<double> cdf(kCells);
  double total = 0.0;
  for (int r = 0; r < kCells; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = total;
  }
  const double cell_side = kDataSpaceSide / kZipfGridCells;
  std::vector<DataObject> out;
  out.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    const double u = rng.Uniform() * total;
    const size_t rank = std::min<size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), kCells - 1);
    const int cell = cell_of_rank[rank];
    const double x0 = (cell % kZipfGridCells) * cell_side;
    const double y0 = (cell / kZipfGridCells) * cell_side;
    const double x = x0 + rng.Uniform() * cell_side;
    const double y = y0 + rng.Uniform() * cell_side;
    out.push_back({i, {x, y}});
  }
  return out;
}

}  // namespace

absl::string_view DataKindName(DataKind kind) {
  switch (kind) {
    case DataKind::kUniform:
      return "uniform";
    case DataKind::kZipf:
      return "zipf";
    case DataKind::kCsv:
      return "csv";
  }
  return "uniform";
}

absl::StatusOr<DataKind> ParseDataKind(absl::string_view name) {
  if (name == "uniform") return DataKind::kUniform;
  if (name == "zipf") return DataKind::kZipf;
  if (name == "csv") return DataKind::kCsv;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown data kind '", name, "' (expected uniform, zipf or csv)"));
}

absl::Status DataSpec::Validate() const {
  if (n < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("object count must be >= 0, got ", n));
  }
  if (kind == DataKind::kZipf &&
      (!(zipf_exponent > 0.0) || !std::isfinite(zipf_exponent))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "zipf exponent must be a positive real, got ", zipf_exponent));
  }
  if (kind == DataKind::kCsv && path.empty()) {
    return absl::InvalidArgumentError("csv data requires a path");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<DataObject>> GenerateData(const DataSpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  Rng rng(spec.seed);
  switch (spec.kind) {
    case DataKind::kUniform:
      return Uniform(spec.n, rng);
    case DataKind::kZipf:
      return Zipf(spec.n, spec.zipf_exponent, rng);
    case DataKind::kCsv:
      return ReadPointsCsv(spec.path, spec.rescale);
  }
  return absl::InternalError("unhandled data kind");
}

absl::Status TrajectorySpec::Validate() const {
  if (count < 0) {
    return absl::InvalidArgumentError("trajectory count must be >= 0");
  }
  if (!(total_length > 0.0) || !std::isfinite(total_length)) {
    return absl::InvalidArgumentError("trajectory length must be > 0");
  }
  if (!(segment_min > 0.0 && segment_min <= segment_max)) {
    return absl::InvalidArgumentError(
        "segment lengths must satisfy 0 < min <= max");
  }
  if (segment_max > 0.5 * kDataSpaceSide) {
    return absl::InvalidArgumentError(
        "segment length cannot exceed half the data space");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Trajectory>> GenerateTrajectories(
    const TrajectorySpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  Rng rng(spec.seed);
  std::vector<Trajectory> out;
  out.reserve(spec.count);
  for (int t = 0; t < spec.count; ++t) {
    Trajectory path;
    Point at{rng.Uniform(0.0, kDataSpaceSide), rng.Uniform(0.0, kDataSpaceSide)};
    path.push_back(at);
    double remaining = spec.total_length;
    while (remaining > 0.0) {
      double len = rng.Uniform(spec.segment_min, spec.segment_max);
      const double heading = rng.Uniform(0.0, 2.0 * std::numbers::pi);
      len = std::min(len, remaining);
      double dx = len * std::cos(heading);
      double dy = len * std::sin(heading);
      if (at.x + dx < 0.0 || at.x + dx > kDataSpaceSide) dx = -dx;
      if (at.y + dy < 0.0 || at.y + dy > kDataSpaceSide) dy = -dy;
      at = Point{std::clamp(at.x + dx, 0.0, kDataSpaceSide),
                 std::clamp(at.y + dy, 0.0, kDataSpaceSide)};
      path.push_back(at);
      remaining -= len;
    }
    out.push_back(std::move(path));
  }
  return out;
}

double ArcLength(const Trajectory& t) {
  double s = 0.0;
  for (size_t i = 1; i < t.size(); ++i) s += Dist(t[i - 1], t[i]);
  return s;
}

}  // namespace pmknn
