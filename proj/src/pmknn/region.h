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

#ifndef PMKNN_REGION_H_
#define PMKNN_REGION_H_

#include <memory>
#include <optional>
#include <vector>

#include "pmknn/geometry.h"

namespace pmknn {

// Immutable planar region built from rectangles, circles and rounded
// rectangles (rectangle Minkowski-summed with a disc) combined by
// intersection and union. Copies share structure.
//
// Regions are only ever queried by point membership and bounding box; they
// are never converted to polygons.
class Region {
 public:
  enum class Kind { kEmpty, kRect, kCircle, kRoundedRect, kIntersection, kUnion };

  // The empty region.
  Region();

  static Region FromRect(const Rect& r);
  static Region FromCircle(const Circle& c);
  // Points within `radius` of `base`.
  static Region RoundedRect(const Rect& base, double radius);
  static Region Intersection(std::vector<Region> parts);
  static Region Union(std::vector<Region> parts);

  Kind kind() const;
  bool Contains(Point p) const;

  // Axis-aligned box containing the region; nullopt when provably empty.
  std::optional<Rect> Bounds() const;

  // True for primitives and intersections of convex regions.
  bool IsConvex() const;

  // Rectangle containment. Exact for convex regions (all corners inside);
  // for unions, checks that a single member contains the whole rectangle.
  bool Contains(const Rect& r) const;

  // Scans a grid over Bounds() for a member point. A false result means
  // no grid point hit; thin slivers below the grid pitch can be missed.
  bool LooksEmpty(int grid = 64) const;

  // Primitive accessors; valid only for the matching kind.
  const Rect& rect() const;
  const Circle& circle() const;
  double rounding() const;
  const std::vector<Region>& parts() const;

 private:
  struct Node;
  explicit Region(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

// Maximum movement bound: everything reachable from `base` moving at most
// `max_speed * elapsed`. Exact for rectangles, circles, rounded rectangles
// and unions; an intersection expands every member independently, which
// yields a superset of the true Minkowski sum.
Region MovementBound(const Region& base, double max_speed, double elapsed);
Region MovementBound(const Rect& base, double max_speed, double elapsed);

}  // namespace pmknn

#endif  // PMKNN_REGION_H_
