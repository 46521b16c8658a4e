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

#ifndef PMKNN_ADVERSARY_H_
#define PMKNN_ADVERSARY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/geometry.h"
#include "pmknn/region.h"

namespace pmknn {

enum class AttackMode { kOverlap, kMovementBound, kCombined };

absl::string_view AttackModeName(AttackMode mode);
absl::StatusOr<AttackMode> ParseAttackMode(absl::string_view name);

struct Observation {
  Rect rect;
  Circle known_region;
  double time = 0.0;
};

// Everything the provider sees of one user.
struct AdversaryView {
  std::vector<Observation> observations;
  ConfidenceParams specified;
  // Units per second, when the provider knows the maximum velocity.
  std::optional<double> max_speed;

  absl::Status Validate() const;
};

struct RefinedRegion {
  Region region;
  size_t step = 0;
};

// Send-time location inference, one region per observation.
//   overlap:  A_1 = R_1, A_{i+1} = R_{i+1} ∩ R_i
//   mmb:      A_{i+1} = R_{i+1} ∩ M(R_i)
//   combined: A_{i+1} = R_{i+1} ∩ R_i ∩ M(A_i)
// where M(X) expands X by max_speed times the elapsed time.
absl::StatusOr<std::vector<RefinedRegion>> Refine(const AdversaryView& view,
                                                  AttackMode mode);

// Union of known regions, each clipped by its movement bound up to the next
// observation when the velocity is known. Empty without observations.
Region TrajectoryRegion(const AdversaryView& view);

// Monte Carlo share (in percent) of `samples` uniform data-space points that
// fall inside TrajectoryRegion(). Points outside the region's bounding box
// are counted without being drawn: their number is binomial, so only the
// points inside the box are sampled explicitly.
double TrajectoryAreaPercent(const AdversaryView& view, int64_t samples,
                             uint64_t seed,
                             const Rect& data_space = DataSpace());

inline size_t Frequency(const AdversaryView& view) {
  return view.observations.size();
}

}  // namespace pmknn

#endif  // PMKNN_ADVERSARY_H_
