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

#ifndef PMKNN_CLIENT_H_
#define PMKNN_CLIENT_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pmknn/geometry.h"
#include "pmknn/random.h"
#include "pmknn/region.h"
#include "pmknn/server.h"

namespace pmknn {

// What the user reveals (cl, k) and what the user actually needs (cl_r, k_r).
struct PrivacyProfile {
  double cl = 1.0;
  double cl_r = 1.0;
  int k = 1;
  int k_r = 1;
  // Safe distance: request again once the boundary distance drops to it.
  double delta = 10.0;
  // Obfuscation rectangle area as a fraction of the data space.
  double rect_area = 0.00005;
  // Length over width, >= 1.
  double rect_ratio = 1.0;

  absl::Status Validate() const;
  // True when the specified values exceed the required ones somewhere.
  bool HidesRequirement() const { return cl > cl_r || k > k_r; }
  std::vector<std::string> Warnings() const;

  ConfidenceParams specified() const { return {cl, k}; }
  ConfidenceParams required() const { return {cl_r, k_r}; }
};

struct GeneratedRect {
  Rect rect;
  // Area had to be reduced below the requested value.
  bool degraded = false;
  // Length over width of the returned rectangle.
  double ratio = 1.0;
};

// Random rectangle of the given area and aspect ratio containing q, placed
// inside `container` intersected with the data space. q's offset inside
// the rectangle is uniform among feasible placements. When no placement
// fits, the aspect ratio is stretched in either orientation, then the area
// is reduced down to a tenth of the request.
absl::StatusOr<GeneratedRect> GenerateRectangle(
    Point q, double area, double ratio, const std::optional<Region>& container,
    Rng& rng, const Rect& data_space = DataSpace());

struct ClientOptions {
  PrivacyProfile profile;
  // Units per second. When set, every rectangle after the first stays
  // inside the maximum movement bound of its predecessor.
  std::optional<double> max_speed;
  Rect data_space = DataSpace();
};

struct RequestRecord {
  Rect rect;
  double time = 0.0;
  Point position;
  bool degraded = false;
  Circle known_region;
  QueryStats stats;
};

struct MoveResult {
  std::vector<Neighbor> answers;
  bool requested = false;
};

// The moving user's side of the protocol. Holds the current candidate set,
// answers kNN locally while the position stays inside its private
// guaranteed region, and issues a new rectangle when it leaves it or comes
// within the safe distance of the known-region boundary.
class Client {
 public:
  static absl::StatusOr<Client> Initiate(Point q, double time,
                                         ClientOptions options,
                                         const Server& server, uint64_t seed);

  absl::StatusOr<MoveResult> OnMove(Point q, double time);
  // Issues a new rectangle at q regardless of the trigger.
  absl::StatusOr<MoveResult> ForceRequest(Point q, double time);

  // Radius of the known region minus the distance of q from its center.
  double BoundaryDistance(Point q) const;
  // The request trigger for position q against the held response.
  bool NeedsRequest(Point q) const;

  const CandidateResponse& response() const { return response_; }
  const std::vector<Neighbor>& answers() const { return answers_; }
  const std::vector<RequestRecord>& request_log() const { return log_; }
  const ClientOptions& options() const { return options_; }

 private:
  Client(ClientOptions options, const Server& server, uint64_t seed)
      : options_(std::move(options)), server_(&server), rng_(seed) {}

  absl::Status Request(Point q, double time);
  bool Triggered(Point q, const std::vector<Neighbor>& ranked) const;
  std::vector<Neighbor> RankCandidates(Point q, int count) const;

  ClientOptions options_;
  const Server* server_;
  Rng rng_;
  CandidateResponse response_;
  std::vector<Neighbor> answers_;
  std::vector<RequestRecord> log_;
};

}  // namespace pmknn

#endif  // PMKNN_CLIENT_H_
