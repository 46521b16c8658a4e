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

#include "pmknn/client.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "pmknn/errors.h"

namespace pmknn {
namespace {

constexpr int kPlacementTries = 24;
constexpr double kRatioStretch[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
constexpr double kMinAreaFraction = 0.1;

// Interval of feasible min-coordinates for a side of length `len` that must
// cover `q` and stay within [lo, hi].
bool PlacementRange(double q, double len, double lo, double hi, double* from,
                    double* to) {
  *from = std::max(q - len, lo);
  *to = std::min(q, hi - len);
  return *from <= *to;
}

}  // namespace

absl::Status PrivacyProfile::Validate() const {
  if (!(cl_r > 0.0 && cl_r <= cl && cl <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "confidence levels must satisfy 0 < cl_r <= cl <= 1, got cl = ", cl,
        ", cl_r = ", cl_r));
  }
  if (!(k_r >= 1 && k_r <= k)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "neighbor counts must satisfy 1 <= k_r <= k, got k = ", k,
        ", k_r = ", k_r));
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("safe distance must be >= 0, got ", delta));
  }
  if (!(rect_area > 0.0 && rect_area <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "rectangle area fraction must be in (0, 1], got ", rect_area));
  }
  if (!(rect_ratio >= 1.0) || !std::isfinite(rect_ratio)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rectangle ratio must be >= 1, got ", rect_ratio));
  }
  return absl::OkStatus();
}

std::vector<std::string> PrivacyProfile::Warnings() const {
  std::vector<std::string> w;
  if (!HidesRequirement()) {
    w.push_back(absl::StrCat(
        "profile (cl=", cl, ", cl_r=", cl_r, ", k=", k, ", k_r=", k_r,
        ") reveals the required values: consecutive rectangles can be "
        "linked by overlap"));
  }
  return w;
}

absl::StatusOr<GeneratedRect> GenerateRectangle(
    Point q, double area, double ratio, const std::optional<Region>& container,
    Rng& rng, const Rect& data_space) {
  if (!(area > 0.0) || !(ratio >= 1.0)) {
    return absl::InvalidArgumentError(
        "rectangle area must be > 0 and ratio >= 1");
  }
  const Region space = Region::FromRect(data_space);
  const Region region =
      container ? Region::Intersection({*container, space}) : space;
  if (!region.Contains(q)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "position (", q.x, ", ", q.y, ") lies outside the rectangle container"));
  }
  const Rect box = *region.Bounds();

  for (double shrink = 1.0; shrink >= kMinAreaFraction - 1e-12;
       shrink -= 0.1) {
    const double a = area * shrink;
    for (double stretch : kRatioStretch) {
      const double r = ratio * stretch;
      const double long_side = std::sqrt(a * r);
      const double short_side = std::sqrt(a / r);
      for (int orientation = 0; orientation < (r > 1.0 ? 2 : 1);
           ++orientation) {
        const double w = orientation == 0 ? long_side : short_side;
        const double h = orientation == 0 ? short_side : long_side;
        double x_from, x_to, y_from, y_to;
        if (!PlacementRange(q.x, w, box.min_x, box.max_x, &x_from, &x_to) ||
            !PlacementRange(q.y, h, box.min_y, box.max_y, &y_from, &y_to)) {
          continue;
        }
        for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
          const double x0 = rng.Uniform(x_from, x_to);
          const double y0 = rng.Uniform(y_from, y_to);
          Rect candidate{x0, y0, x0 + w, y0 + h};
          // Rounding can push the far edge past q or the box.
          candidate.max_x = std::max(candidate.max_x, q.x);
          candidate.max_y = std::max(candidate.max_y, q.y);
          if (region.Contains(candidate)) {
            return GeneratedRect{candidate, shrink < 1.0, r};
          }
        }
      }
    }
  }
  return UnsatisfiableError(absl::StrCat(
      "no rectangle of at least ", kMinAreaFraction * 100,
      "% of the requested area fits around (", q.x, ", ", q.y, ")"));
}

absl::StatusOr<Client> Client::Initiate(Point q, double time,
                                        ClientOptions options,
                                        const Server& server, uint64_t seed) {
  PMKNN_RETURN_IF_ERROR(options.profile.Validate());
  if (!options.data_space.Contains(q)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "position (", q.x, ", ", q.y, ") lies outside the data space"));
  }
  Client client(std::move(options), server, seed);
  PMKNN_RETURN_IF_ERROR(client.Request(q, time));
  return client;
}

double Client::BoundaryDistance(Point q) const {
  const Circle& c = response_.known_region;
  return c.radius - Dist(c.center, q);
}

bool Client::NeedsRequest(Point q) const {
  return Triggered(q, RankCandidates(q, options_.profile.k_r));
}

bool Client::Triggered(Point q, const std::vector<Neighbor>& ranked) const {
  const PrivacyProfile& p = options_.profile;
  const Circle& c = response_.known_region;
  const double to_center = Dist(c.center, q);
  if (c.radius - to_center <= p.delta) return true;
  if (ranked.size() < static_cast<size_t>(p.k_r)) return true;
  // Outside GCR(cl_r, k_r).
  return c.radius <= p.cl_r * ranked.back().distance + to_center;
}

absl::StatusOr<MoveResult> Client::OnMove(Point q, double time) {
  if (!options_.data_space.Contains(q)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "position (", q.x, ", ", q.y, ") lies outside the data space"));
  }
  MoveResult result;
  std::vector<Neighbor> ranked = RankCandidates(q, options_.profile.k_r);
  if (Triggered(q, ranked)) {
    PMKNN_RETURN_IF_ERROR(Request(q, time));
    result.requested = true;
  } else {
    answers_ = std::move(ranked);
  }
  result.answers = answers_;
  return result;
}

absl::StatusOr<MoveResult> Client::ForceRequest(Point q, double time) {
  if (!options_.data_space.Contains(q)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "position (", q.x, ", ", q.y, ") lies outside the data space"));
  }
  PMKNN_RETURN_IF_ERROR(Request(q, time));
  return MoveResult{answers_, true};
}

absl::Status Client::Request(Point q, double time) {
  const PrivacyProfile& p = options_.profile;
  const double area = p.rect_area * options_.data_space.Area();
  std::optional<Region> container;
  if (!log_.empty()) {
    std::vector<Region> parts{Region::FromCircle(response_.known_region)};
    if (options_.max_speed) {
      parts.push_back(MovementBound(log_.back().rect, *options_.max_speed,
                                    time - log_.back().time));
    }
    container = Region::Intersection(std::move(parts));
  }
  PMKNN_ASSIGN_OR_RETURN(
      GeneratedRect generated,
      GenerateRectangle(q, area, p.rect_ratio, container, rng_,
                        options_.data_space));
  PMKNN_ASSIGN_OR_RETURN(
      CandidateResponse response,
      server_->Query(QueryRequest{generated.rect, p.specified()}));
  response_ = std::move(response);
  log_.push_back(RequestRecord{generated.rect, time, q, generated.degraded,
                               response_.known_region, response_.stats});
  answers_ = RankCandidates(q, p.k_r);
  return absl::OkStatus();
}

std::vector<Neighbor> Client::RankCandidates(Point q, int count) const {
  return BruteForceKnn(response_.objects, q, count);
}

}  // namespace pmknn
