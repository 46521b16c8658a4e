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

#include "pmknn/server.h"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_set>

#include "absl/strings/str_cat.h"

namespace pmknn {
namespace {

absl::Status ValidateRequest(const RTree& index, const QueryRequest& request,
                             const Rect& data_space) {
  if (!request.rect.IsValid()) {
    return absl::InvalidArgumentError("malformed obfuscation rectangle");
  }
  if (!data_space.Contains(request.rect)) {
    return absl::InvalidArgumentError(
        "obfuscation rectangle lies outside the data space");
  }
  if (absl::Status s = request.params.Validate(); !s.ok()) return s;
  if (index.size() < static_cast<size_t>(request.params.k)) {
    return absl::FailedPreconditionError(
        absl::StrCat("insufficient data objects: ", index.size(),
                     " indexed, k = ", request.params.k));
  }
  return absl::OkStatus();
}

double CoveringRadius(Point o, const Rect& space) {
  double r = 0.0;
  for (const Point& c : Corners(space)) r = std::max(r, Dist(o, c));
  return r;
}

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

bool CornerQualifies(Point corner, Point p, Point center, double r,
                     double cl) {
  return ConfidenceLevel(corner, p, Circle{center, r}) >= cl;
}

SearchStatus ResolveTargetRadius(
    const Rect& rect, const ConfidenceParams& params,
    const std::array<std::vector<Point>, 4>& qualified, double radius) {
  const std::array<Point, 4> middles = Middles(rect);
  double d_max = 0.0;
  for (int t = 0; t < 4; ++t) {
    // m_t lies between corners t and t+1.
    for (int c : {t, (t + 1) % 4}) {
      d_max = std::max(
          d_max, KthSmallestDistance(middles[t], qualified[c], params.k));
    }
  }
  const double d_safe = radius - 0.5 * std::max(rect.Width(), rect.Height());
  if (params.cl * d_max > d_safe) {
    return SearchStatus::TargetRadius(radius + params.cl * d_max - d_safe);
  }
  return SearchStatus::Done();
}

SearchStatus UpdateStatus(const Rect& rect, const ConfidenceParams& params,
                          std::span<const Point> objects, double radius) {
  const Point o = rect.Center();
  const std::array<Point, 4> corners = Corners(rect);
  std::array<std::vector<Point>, 4> qualified;
  for (int t = 0; t < 4; ++t) {
    for (const Point& p : objects) {
      if (CornerQualifies(corners[t], p, o, radius, params.cl)) {
        qualified[t].push_back(p);
      }
    }
    if (qualified[t].size() < static_cast<size_t>(params.k)) {
      return SearchStatus::Searching();
    }
  }
  return ResolveTargetRadius(rect, params, qualified, radius);
}

absl::StatusOr<CandidateResponse> Clappinq(const RTree& index,
                                           const QueryRequest& request,
                                           const Rect& data_space) {
  if (absl::Status s = ValidateRequest(index, request, data_space); !s.ok()) {
    return s;
  }
  const auto start = Clock::now();
  const Rect& rect = request.rect;
  const double cl = request.params.cl;
  const size_t k = static_cast<size_t>(request.params.k);
  const Point o = rect.Center();
  const std::array<Point, 4> corners = Corners(rect);
  std::array<double, 4> corner_offset;
  for (int t = 0; t < 4; ++t) corner_offset[t] = Dist(o, corners[t]);

  // Per corner: objects not yet qualifying, keyed by the radius at which
  // they will (|o c| + cl * |c p|).
  using Pending = std::pair<double, uint32_t>;
  std::array<std::priority_queue<Pending, std::vector<Pending>, std::greater<>>,
             4>
      pending;
  std::array<std::vector<Point>, 4> qualified;

  CandidateResponse response;
  NnStream stream(index, o);
  SearchStatus status = SearchStatus::Searching();
  double radius = 0.0;

  while (true) {
    const bool searching = status.state() == SearchStatus::State::kSearching;
    if (!searching && stream.PeekMinDist() > radius) break;
    std::optional<Neighbor> next = stream.Next();
    if (!next) break;
    if (!searching && next->distance > radius) break;

    const uint32_t idx = static_cast<uint32_t>(response.objects.size());
    response.objects.push_back(DataObject{next->id, next->location});
    if (!searching) continue;

    const double r = next->distance;
    bool all_corners = true;
    for (int t = 0; t < 4; ++t) {
      pending[t].emplace(corner_offset[t] + cl * Dist(corners[t], next->location),
                         idx);
      while (!pending[t].empty()) {
        const Point& p = response.objects[pending[t].top().second].location;
        if (!CornerQualifies(corners[t], p, o, r, cl)) break;
        qualified[t].push_back(p);
        pending[t].pop();
      }
      all_corners = all_corners && qualified[t].size() >= k;
    }
    if (all_corners) {
      status = ResolveTargetRadius(rect, request.params, qualified, r);
      radius = status.state() == SearchStatus::State::kTargetRadius
                   ? status.target_radius()
                   : r;
    }
  }

  if (status.state() == SearchStatus::State::kSearching) {
    // Every object has been emitted; cover the whole data space.
    double far = CoveringRadius(o, data_space);
    if (!response.objects.empty()) {
      far = std::max(far, Dist(o, response.objects.back().location));
    }
    radius = far;
    response.stats.exhausted = true;
  }

  response.known_region = Circle{o, radius};
  response.stats.io = stream.io();
  response.stats.answer_size = response.objects.size();
  response.stats.elapsed_seconds = SecondsSince(start);
  return response;
}

absl::StatusOr<CandidateResponse> NaiveBaseline(const RTree& index,
                                                const QueryRequest& request,
                                                int grid,
                                                const Rect& data_space) {
  if (absl::Status s = ValidateRequest(index, request, data_space); !s.ok()) {
    return s;
  }
  if (grid < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("baseline grid must be >= 1, got ", grid));
  }
  const auto start = Clock::now();
  const Rect& rect = request.rect;
  const Point o = rect.Center();
  const int k = request.params.k;

  CandidateResponse response;
  std::unordered_set<int64_t> seen;
  double radius = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Point q{rect.min_x + rect.Width() * (i + 0.5) / grid,
                    rect.min_y + rect.Height() * (j + 0.5) / grid};
      NnStream stream(index, q);
      for (int n = 0; n < k; ++n) {
        std::optional<Neighbor> nb = stream.Next();
        if (!nb) break;
        if (seen.insert(nb->id).second) {
          response.objects.push_back(DataObject{nb->id, nb->location});
          radius = std::max(radius, Dist(o, nb->location));
        }
      }
      response.stats.io.pages_read += stream.io().pages_read;
    }
  }
  std::sort(response.objects.begin(), response.objects.end(),
            [o](const DataObject& a, const DataObject& b) {
              const double da = Dist(o, a.location);
              const double db = Dist(o, b.location);
              if (da != db) return da < db;
              return a.id < b.id;
            });
  response.known_region = Circle{o, radius};
  response.stats.answer_size = response.objects.size();
  response.stats.elapsed_seconds = SecondsSince(start);
  return response;
}

std::vector<Neighbor> BruteForceKnn(std::span<const DataObject> objects,
                                    Point q, int k) {
  std::vector<Neighbor> all;
  all.reserve(objects.size());
  for (const DataObject& o : objects) {
    all.push_back(Neighbor{o.id, o.location, Dist(q, o.location)});
  }
  const size_t n = std::min(all.size(), static_cast<size_t>(std::max(k, 0)));
  std::partial_sort(all.begin(), all.begin() + n, all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      if (a.distance != b.distance) {
                        return a.distance < b.distance;
                      }
                      return a.id < b.id;
                    });
  all.resize(n);
  return all;
}

}  // namespace pmknn
