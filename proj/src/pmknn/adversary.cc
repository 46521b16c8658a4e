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

#include "pmknn/adversary.h"

#include <algorithm>
#include <random>

#include "absl/strings/str_cat.h"
#include "pmknn/random.h"

namespace pmknn {

absl::string_view AttackModeName(AttackMode mode) {
  switch (mode) {
    case AttackMode::kOverlap:
      return "overlap";
    case AttackMode::kMovementBound:
      return "mmb";
    case AttackMode::kCombined:
      return "combined";
  }
  return "overlap";
}

absl::StatusOr<AttackMode> ParseAttackMode(absl::string_view name) {
  if (name == "overlap") return AttackMode::kOverlap;
  if (name == "mmb") return AttackMode::kMovementBound;
  if (name == "combined") return AttackMode::kCombined;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown attack mode '", name, "' (expected overlap, mmb or combined)"));
}

absl::Status AdversaryView::Validate() const {
  for (size_t i = 1; i < observations.size(); ++i) {
    if (!(observations[i].time > observations[i - 1].time)) {
      return absl::InvalidArgumentError(
          absl::StrCat("observation timestamps must increase strictly (index ",
                       i, ")"));
    }
  }
  if (max_speed && !(*max_speed >= 0.0)) {
    return absl::InvalidArgumentError("max speed must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<RefinedRegion>> Refine(const AdversaryView& view,
                                                  AttackMode mode) {
  if (absl::Status s = view.Validate(); !s.ok()) return s;
  if (view.observations.empty()) {
    return absl::InvalidArgumentError("refinement needs an observation");
  }
  if (mode != AttackMode::kOverlap && !view.max_speed) {
    return absl::InvalidArgumentError(absl::StrCat(
        "attack mode '", AttackModeName(mode), "' requires a max speed"));
  }
  const auto& obs = view.observations;
  std::vector<RefinedRegion> out;
  out.reserve(obs.size());
  out.push_back({Region::FromRect(obs[0].rect), 0});
  for (size_t i = 1; i < obs.size(); ++i) {
    const Region current = Region::FromRect(obs[i].rect);
    const Region previous = Region::FromRect(obs[i - 1].rect);
    const double elapsed = obs[i].time - obs[i - 1].time;
    Region refined;
    switch (mode) {
      case AttackMode::kOverlap:
        refined = Region::Intersection({current, previous});
        break;
      case AttackMode::kMovementBound:
        refined = Region::Intersection(
            {current, MovementBound(obs[i - 1].rect, *view.max_speed, elapsed)});
        break;
      case AttackMode::kCombined:
        refined = Region::Intersection(
            {current, previous,
             MovementBound(out.back().region, *view.max_speed, elapsed)});
        break;
    }
    out.push_back({std::move(refined), i});
  }
  return out;
}

Region TrajectoryRegion(const AdversaryView& view) {
  const auto& obs = view.observations;
  std::vector<Region> terms;
  terms.reserve(obs.size());
  for (size_t i = 0; i < obs.size(); ++i) {
    Region known = Region::FromCircle(obs[i].known_region);
    if (view.max_speed && i + 1 < obs.size()) {
      known = Region::Intersection(
          {known, MovementBound(obs[i].rect, *view.max_speed,
                                obs[i + 1].time - obs[i].time)});
    }
    terms.push_back(std::move(known));
  }
  return Region::Union(std::move(terms));
}

double TrajectoryAreaPercent(const AdversaryView& view, int64_t samples,
                             uint64_t seed, const Rect& data_space) {
  if (view.observations.empty() || samples <= 0) return 0.0;
  const Region region = TrajectoryRegion(view);
  const std::optional<Rect> bounds = region.Bounds();
  if (!bounds) return 0.0;
  const Rect box{std::max(bounds->min_x, data_space.min_x),
                 std::max(bounds->min_y, data_space.min_y),
                 std::min(bounds->max_x, data_space.max_x),
                 std::min(bounds->max_y, data_space.max_y)};
  if (box.min_x > box.max_x || box.min_y > box.max_y) return 0.0;

  Rng rng(seed);
  const double share = std::clamp(box.Area() / data_space.Area(), 0.0, 1.0);
  std::binomial_distribution<int64_t> in_box(samples, share);
  const int64_t drawn = in_box(rng.engine());
  int64_t hits = 0;
  for (int64_t i = 0; i < drawn; ++i) {
    const Point p{rng.Uniform(box.min_x, box.max_x),
                  rng.Uniform(box.min_y, box.max_y)};
    if (region.Contains(p)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace pmknn
