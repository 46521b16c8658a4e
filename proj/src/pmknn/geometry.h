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

#ifndef PMKNN_GEOMETRY_H_
#define PMKNN_GEOMETRY_H_

#include <array>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace pmknn {

// Side length of the square data space every generator and query uses.
inline constexpr double kDataSpaceSide = 10000.0;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned rectangle. All membership tests are closed.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  static Rect FromCenter(Point center, double width, double height);

  double Width() const { return max_x - min_x; }
  double Height() const { return max_y - min_y; }
  double Area() const { return Width() * Height(); }
  Point Center() const {
    return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
  }
  bool IsValid() const;
  bool Contains(Point p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  bool Contains(const Rect& other) const {
    return other.min_x >= min_x && other.max_x <= max_x &&
           other.min_y >= min_y && other.max_y <= max_y;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect DataSpace();

struct Circle {
  Point center;
  double radius = 0.0;

  bool Contains(Point p) const;
  bool Contains(const Rect& r) const;

  friend bool operator==(const Circle&, const Circle&) = default;
};

// Specified confidence level and number of nearest neighbors.
struct ConfidenceParams {
  double cl = 1.0;
  int k = 1;

  absl::Status Validate() const;
};

double Dist(Point a, Point b);

// Distance from p to the closest point of r; 0 when p is inside r.
double MinDist(Point p, const Rect& r);

// c1..c4 counterclockwise starting at (min_x, min_y).
std::array<Point, 4> Corners(const Rect& r);

// Edge midpoints m12, m23, m34, m41 in the same order as Corners().
std::array<Point, 4> Middles(const Rect& r);

// Confidence level of a user at q for object p, where p lies inside the
// known region: 0 outside the known region, 1 when no unknown object can be
// closer than p, and r'/dist(q, p) otherwise, with r' the radius of the
// largest circle around q that fits in the known region.
double ConfidenceLevel(Point q, Point p, const Circle& known);

// k-th smallest distance (1-based) from q to `objects`. Requires
// 1 <= k <= objects.size().
double KthSmallestDistance(Point q, std::span<const Point> objects, int k);

// A known region together with its retrieved objects and the (cl, k) pair
// whose guaranteed regions are being asked about.
class GcrQuery {
 public:
  static absl::StatusOr<GcrQuery> Create(Circle known_region,
                                         std::vector<Point> objects,
                                         ConfidenceParams params);

  const Circle& known_region() const { return known_region_; }
  const std::vector<Point>& objects() const { return objects_; }
  const ConfidenceParams& params() const { return params_; }

  // Membership of q in GR(cl, objects()[index]).
  bool InGuaranteedRegion(Point q, size_t index) const;

  // Membership of q in GCR(cl, k) by counting overlapping guaranteed regions.
  absl::StatusOr<bool> InCombinedRegion(Point q) const;

  // Same predicate evaluated as radius >= cl * d_k(q) + dist(center, q).
  absl::StatusOr<bool> InCombinedRegionByRadius(Point q) const;

 private:
  GcrQuery(Circle known_region, std::vector<Point> objects,
           ConfidenceParams params)
      : known_region_(known_region),
        objects_(std::move(objects)),
        params_(params) {}

  absl::Status CheckEnoughCandidates() const;

  Circle known_region_;
  std::vector<Point> objects_;
  ConfidenceParams params_;
};

}  // namespace pmknn

#endif  // PMKNN_GEOMETRY_H_
