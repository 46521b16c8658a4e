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

#include "pmknn/geometry.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace pmknn {

Rect Rect::FromCenter(Point center, double width, double height) {
  return {center.x - 0.5 * width, center.y - 0.5 * height,
          center.x + 0.5 * width, center.y + 0.5 * height};
}

bool Rect::IsValid() const {
  return std::isfinite(min_x) && std::isfinite(min_y) &&
         std::isfinite(max_x) && std::isfinite(max_y) && min_x <= max_x &&
         min_y <= max_y;
}

Rect DataSpace() { return {0.0, 0.0, kDataSpaceSide, kDataSpaceSide}; }

bool Circle::Contains(Point p) const { return Dist(center, p) <= radius; }

bool Circle::Contains(const Rect& r) const {
  for (const Point& c : Corners(r)) {
    if (!Contains(c)) return false;
  }
  return true;
}

absl::Status ConfidenceParams::Validate() const {
  if (!(cl > 0.0 && cl <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("confidence level must be in (0, 1], got ", cl));
  }
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of nearest neighbors must be >= 1, got ", k));
  }
  return absl::OkStatus();
}

double Dist(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double MinDist(Point p, const Rect& r) {
  const double dx = std::max({r.min_x - p.x, 0.0, p.x - r.max_x});
  const double dy = std::max({r.min_y - p.y, 0.0, p.y - r.max_y});
  return std::sqrt(dx * dx + dy * dy);
}

std::array<Point, 4> Corners(const Rect& r) {
  return {Point{r.min_x, r.min_y}, Point{r.max_x, r.min_y},
          Point{r.max_x, r.max_y}, Point{r.min_x, r.max_y}};
}

std::array<Point, 4> Middles(const Rect& r) {
  const Point c = r.Center();
  return {Point{c.x, r.min_y}, Point{r.max_x, c.y}, Point{c.x, r.max_y},
          Point{r.min_x, c.y}};
}

double ConfidenceLevel(Point q, Point p, const Circle& known) {
  const double inner_radius = known.radius - Dist(known.center, q);
  if (inner_radius < 0.0) return 0.0;
  const double d = Dist(q, p);
  if (d <= inner_radius) return 1.0;
  return inner_radius / d;
}

double KthSmallestDistance(Point q, std::span<const Point> objects, int k) {
  std::vector<double> d;
  d.reserve(objects.size());
  for (const Point& p : objects) d.push_back(Dist(q, p));
  auto kth = d.begin() + (k - 1);
  std::nth_element(d.begin(), kth, d.end());
  return *kth;
}

absl::StatusOr<GcrQuery> GcrQuery::Create(Circle known_region,
                                          std::vector<Point> objects,
                                          ConfidenceParams params) {
  if (!(known_region.radius > 0.0) || !std::isfinite(known_region.radius)) {
    return absl::InvalidArgumentError(
        "known region must have a positive, finite radius");
  }
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  for (size_t i = 0; i < objects.size(); ++i) {
    if (!known_region.Contains(objects[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("object ", i, " lies outside the known region"));
    }
  }
  return GcrQuery(known_region, std::move(objects), params);
}

bool GcrQuery::InGuaranteedRegion(Point q, size_t index) const {
  return ConfidenceLevel(q, objects_[index], known_region_) >= params_.cl;
}

absl::Status GcrQuery::CheckEnoughCandidates() const {
  if (objects_.size() < static_cast<size_t>(params_.k)) {
    return absl::FailedPreconditionError(
        absl::StrCat("insufficient candidates: ", objects_.size(),
                     " objects for k = ", params_.k));
  }
  return absl::OkStatus();
}

absl::StatusOr<bool> GcrQuery::InCombinedRegion(Point q) const {
  if (absl::Status s = CheckEnoughCandidates(); !s.ok()) return s;
  int count = 0;
  for (size_t i = 0; i < objects_.size(); ++i) {
    if (InGuaranteedRegion(q, i) && ++count >= params_.k) return true;
  }
  return false;
}

absl::StatusOr<bool> GcrQuery::InCombinedRegionByRadius(Point q) const {
  if (absl::Status s = CheckEnoughCandidates(); !s.ok()) return s;
  const double dk = KthSmallestDistance(q, objects_, params_.k);
  return known_region_.radius >=
         params_.cl * dk + Dist(known_region_.center, q);
}

}  // namespace pmknn
