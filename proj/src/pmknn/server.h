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

#ifndef PMKNN_SERVER_H_
#define PMKNN_SERVER_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pmknn/geometry.h"
#include "pmknn/rtree.h"

namespace pmknn {

struct QueryRequest {
  Rect rect;
  ConfidenceParams params;
};

struct QueryStats {
  IoStats io;
  double elapsed_seconds = 0.0;
  size_t answer_size = 0;
  // The stream ran dry before every corner qualified; the response then
  // covers the whole data space.
  bool exhausted = false;
};

// The provider's answer: every object inside the known region.
struct CandidateResponse {
  // Nondecreasing distance from the known-region center.
  std::vector<DataObject> objects;
  Circle known_region;
  QueryStats stats;
};

// Search control value. Encodes as 0 (searching), a positive target
// radius, or -1 (done).
class SearchStatus {
 public:
  enum class State { kSearching, kTargetRadius, kDone };

  static SearchStatus Searching() { return SearchStatus(State::kSearching, 0); }
  static SearchStatus TargetRadius(double r) {
    return SearchStatus(State::kTargetRadius, r);
  }
  static SearchStatus Done() { return SearchStatus(State::kDone, -1); }

  State state() const { return state_; }
  double target_radius() const { return value_; }
  double encoded() const { return value_; }

  friend bool operator==(const SearchStatus&, const SearchStatus&) = default;

 private:
  SearchStatus(State s, double v) : state_(s), value_(v) {}

  State state_;
  double value_;
};

// Whether object p gives corner c a confidence level of at least cl with
// the known region of radius r around center.
bool CornerQualifies(Point corner, Point p, Point center, double r, double cl);

// Required known-region radius given, for each corner, the objects that
// already qualify for it (at least k each). `radius` is the current search
// radius.
SearchStatus ResolveTargetRadius(
    const Rect& rect, const ConfidenceParams& params,
    const std::array<std::vector<Point>, 4>& qualified, double radius);

// One status evaluation from scratch over the retrieved objects P, where
// `radius` is the distance of the last retrieved object from the center.
// A corner with fewer than k qualifying objects keeps the search going.
SearchStatus UpdateStatus(const Rect& rect, const ConfidenceParams& params,
                          std::span<const Point> objects, double radius);

// Single best-first traversal from the rectangle center returning a
// candidate set that holds the k nearest neighbors at confidence >= cl for
// every point of the rectangle.
absl::StatusOr<CandidateResponse> Clappinq(const RTree& index,
                                           const QueryRequest& request,
                                           const Rect& data_space = DataSpace());

// Exact kNN at each center of a grid x grid tiling of the rectangle, one
// independent best-first query per point. Benchmark baseline only; ignores
// params.cl.
absl::StatusOr<CandidateResponse> NaiveBaseline(
    const RTree& index, const QueryRequest& request, int grid,
    const Rect& data_space = DataSpace());

// Linear-scan oracle: the k closest objects, ties broken by id.
std::vector<Neighbor> BruteForceKnn(std::span<const DataObject> objects,
                                    Point q, int k);

// Thin handle the client talks to.
class Server {
 public:
  explicit Server(const RTree& index, Rect data_space = DataSpace())
      : index_(&index), data_space_(data_space) {}

  absl::StatusOr<CandidateResponse> Query(const QueryRequest& request) const {
    return Clappinq(*index_, request, data_space_);
  }

  const RTree& index() const { return *index_; }
  const Rect& data_space() const { return data_space_; }

 private:
  const RTree* index_;
  Rect data_space_;
};

}  // namespace pmknn

#endif  // PMKNN_SERVER_H_
