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

#include "pmknn/region.h"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pmknn {

struct Region::Node {
  Kind kind = Kind::kEmpty;
  Rect rect;
  Circle circle;
  double rounding = 0.0;
  std::vector<Region> parts;
  std::optional<Rect> bounds;
};

namespace {

std::optional<Rect> IntersectBoxes(const std::optional<Rect>& a,
                                   const std::optional<Rect>& b) {
  if (!a || !b) return std::nullopt;
  Rect r{std::max(a->min_x, b->min_x), std::max(a->min_y, b->min_y),
         std::min(a->max_x, b->max_x), std::min(a->max_y, b->max_y)};
  if (r.min_x > r.max_x || r.min_y > r.max_y) return std::nullopt;
  return r;
}

std::optional<Rect> UniteBoxes(const std::optional<Rect>& a,
                               const std::optional<Rect>& b) {
  if (!a) return b;
  if (!b) return a;
  return Rect{std::min(a->min_x, b->min_x), std::min(a->min_y, b->min_y),
              std::max(a->max_x, b->max_x), std::max(a->max_y, b->max_y)};
}

Rect Inflate(const Rect& r, double d) {
  return {r.min_x - d, r.min_y - d, r.max_x + d, r.max_y + d};
}

}  // namespace

Region::Region() : node_(std::make_shared<Node>()) {}

Region::Region(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Region Region::FromRect(const Rect& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRect;
  n->rect = r;
  n->bounds = r;
  return Region(std::move(n));
}

Region Region::FromCircle(const Circle& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCircle;
  n->circle = c;
  n->bounds = Rect{c.center.x - c.radius, c.center.y - c.radius,
                   c.center.x + c.radius, c.center.y + c.radius};
  return Region(std::move(n));
}

Region Region::RoundedRect(const Rect& base, double radius) {
  if (radius <= 0.0) return FromRect(base);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRoundedRect;
  n->rect = base;
  n->rounding = radius;
  n->bounds = Inflate(base, radius);
  return Region(std::move(n));
}

Region Region::Intersection(std::vector<Region> parts) {
  if (parts.empty()) return Region();
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kIntersection;
  n->bounds = parts.front().Bounds();
  for (size_t i = 1; i < parts.size(); ++i) {
    n->bounds = IntersectBoxes(n->bounds, parts[i].Bounds());
  }
  n->parts = std::move(parts);
  return Region(std::move(n));
}

Region Region::Union(std::vector<Region> parts) {
  if (parts.empty()) return Region();
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kUnion;
  for (const Region& p : parts) n->bounds = UniteBoxes(n->bounds, p.Bounds());
  n->parts = std::move(parts);
  return Region(std::move(n));
}

Region::Kind Region::kind() const { return node_->kind; }

bool Region::Contains(Point p) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kEmpty:
      return false;
    case Kind::kRect:
      return n.rect.Contains(p);
    case Kind::kCircle:
      return n.circle.Contains(p);
    case Kind::kRoundedRect:
      return MinDist(p, n.rect) <= n.rounding;
    case Kind::kIntersection:
      if (!n.bounds || !n.bounds->Contains(p)) return false;
      for (const Region& r : n.parts) {
        if (!r.Contains(p)) return false;
      }
      return true;
    case Kind::kUnion:
      if (!n.bounds || !n.bounds->Contains(p)) return false;
      for (const Region& r : n.parts) {
        if (r.Contains(p)) return true;
      }
      return false;
  }
  return false;
}

std::optional<Rect> Region::Bounds() const { return node_->bounds; }

bool Region::IsConvex() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kUnion:
      return false;
    case Kind::kIntersection:
      return std::all_of(n.parts.begin(), n.parts.end(),
                         [](const Region& r) { return r.IsConvex(); });
    default:
      return true;
  }
}

bool Region::Contains(const Rect& r) const {
  if (IsConvex()) {
    for (const Point& c : Corners(r)) {
      if (!Contains(c)) return false;
    }
    return node_->kind != Kind::kEmpty;
  }
  // Union: sufficient condition only.
  for (const Region& part : node_->parts) {
    if (part.Contains(r)) return true;
  }
  return false;
}

bool Region::LooksEmpty(int grid) const {
  const std::optional<Rect> b = Bounds();
  if (!b) return true;
  for (int i = 0; i <= grid; ++i) {
    const double x = b->min_x + b->Width() * i / grid;
    for (int j = 0; j <= grid; ++j) {
      const double y = b->min_y + b->Height() * j / grid;
      if (Contains(Point{x, y})) return false;
    }
  }
  return true;
}

const Rect& Region::rect() const {
  assert(node_->kind == Kind::kRect || node_->kind == Kind::kRoundedRect);
  return node_->rect;
}

const Circle& Region::circle() const {
  assert(node_->kind == Kind::kCircle);
  return node_->circle;
}

double Region::rounding() const { return node_->rounding; }

const std::vector<Region>& Region::parts() const { return node_->parts; }

Region MovementBound(const Region& base, double max_speed, double elapsed) {
  const double d = max_speed * elapsed;
  if (d <= 0.0) return base;
  switch (base.kind()) {
    case Region::Kind::kEmpty:
      return base;
    case Region::Kind::kRect:
      return Region::RoundedRect(base.rect(), d);
    case Region::Kind::kRoundedRect:
      return Region::RoundedRect(base.rect(), base.rounding() + d);
    case Region::Kind::kCircle:
      return Region::FromCircle(
          Circle{base.circle().center, base.circle().radius + d});
    case Region::Kind::kIntersection:
    case Region::Kind::kUnion: {
      std::vector<Region> grown;
      grown.reserve(base.parts().size());
      for (const Region& p : base.parts()) {
        grown.push_back(MovementBound(p, max_speed, elapsed));
      }
      return base.kind() == Region::Kind::kUnion
                 ? Region::Union(std::move(grown))
                 : Region::Intersection(std::move(grown));
    }
  }
  return base;
}

Region MovementBound(const Rect& base, double max_speed, double elapsed) {
  return MovementBound(Region::FromRect(base), max_speed, elapsed);
}

}  // namespace pmknn
