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

#include "pmknn/rtree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "absl/strings/str_cat.h"

namespace pmknn {
namespace {

Rect Enclose(const Rect& a, const Rect& b) {
  return {std::min(a.min_x, b.min_x), std::min(a.min_y, b.min_y),
          std::max(a.max_x, b.max_x), std::max(a.max_y, b.max_y)};
}

// Sort-tile-recursive ordering of items by their centers. Reorders `order`
// in place and returns the size of each packed group, in order.
std::vector<uint32_t> TileOrder(std::vector<uint32_t>& order,
                                const std::vector<Point>& centers,
                                int capacity) {
  const size_t n = order.size();
  const size_t groups = (n + capacity - 1) / capacity;
  const size_t slabs =
      static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(groups))));
  const size_t slab_size = slabs * capacity;

  auto by_x = [&](uint32_t a, uint32_t b) {
    const Point& pa = centers[a];
    const Point& pb = centers[b];
    if (pa.x != pb.x) return pa.x < pb.x;
    if (pa.y != pb.y) return pa.y < pb.y;
    return a < b;
  };
  auto by_y = [&](uint32_t a, uint32_t b) {
    const Point& pa = centers[a];
    const Point& pb = centers[b];
    if (pa.y != pb.y) return pa.y < pb.y;
    if (pa.x != pb.x) return pa.x < pb.x;
    return a < b;
  };

  std::sort(order.begin(), order.end(), by_x);
  std::vector<uint32_t> sizes;
  sizes.reserve(groups);
  for (size_t start = 0; start < n; start += slab_size) {
    const size_t end = std::min(n, start + slab_size);
    std::sort(order.begin() + start, order.begin() + end, by_y);
    for (size_t g = start; g < end; g += capacity) {
      sizes.push_back(static_cast<uint32_t>(std::min<size_t>(capacity, end - g)));
    }
  }
  return sizes;
}

}  // namespace

absl::StatusOr<RTree> RTree::Build(std::vector<DataObject> objects,
                                   int capacity) {
  if (capacity < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("node capacity must be >= 2, got ", capacity));
  }
  {
    std::unordered_set<int64_t> seen;
    seen.reserve(objects.size());
    for (const DataObject& o : objects) {
      if (!seen.insert(o.id).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate object id ", o.id));
      }
      if (!std::isfinite(o.location.x) || !std::isfinite(o.location.y)) {
        return absl::InvalidArgumentError(
            absl::StrCat("object ", o.id, " has non-finite coordinates"));
      }
    }
  }

  RTree tree;
  tree.capacity_ = capacity;
  if (objects.empty()) return tree;

  // Leaves.
  std::vector<uint32_t> order(objects.size());
  std::iota(order.begin(), order.end(), 0u);
  std::vector<Point> centers(objects.size());
  for (size_t i = 0; i < objects.size(); ++i) centers[i] = objects[i].location;
  std::vector<uint32_t> sizes = TileOrder(order, centers, capacity);

  tree.objects_.reserve(objects.size());
  for (uint32_t i : order) tree.objects_.push_back(objects[i]);

  std::vector<Node> level;
  uint32_t first = 0;
  for (uint32_t count : sizes) {
    Node node;
    node.first = first;
    node.count = count;
    const Point& p0 = tree.objects_[first].location;
    node.mbr = Rect{p0.x, p0.y, p0.x, p0.y};
    for (uint32_t i = first; i < first + count; ++i) {
      const Point& p = tree.objects_[i].location;
      node.mbr = Enclose(node.mbr, Rect{p.x, p.y, p.x, p.y});
    }
    level.push_back(node);
    first += count;
  }
  tree.levels_.push_back(std::move(level));

  // Internal levels until a single root remains.
  while (tree.levels_.back().size() > 1) {
    std::vector<Node>& below = tree.levels_.back();
    std::vector<uint32_t> node_order(below.size());
    std::iota(node_order.begin(), node_order.end(), 0u);
    std::vector<Point> node_centers(below.size());
    for (size_t i = 0; i < below.size(); ++i) {
      node_centers[i] = below[i].mbr.Center();
    }
    std::vector<uint32_t> group_sizes =
        TileOrder(node_order, node_centers, capacity);

    std::vector<Node> reordered;
    reordered.reserve(below.size());
    for (uint32_t i : node_order) reordered.push_back(below[i]);
    below = std::move(reordered);

    std::vector<Node> above;
    uint32_t start = 0;
    for (uint32_t count : group_sizes) {
      Node node;
      node.first = start;
      node.count = count;
      node.mbr = below[start].mbr;
      for (uint32_t i = start + 1; i < start + count; ++i) {
        node.mbr = Enclose(node.mbr, below[i].mbr);
      }
      above.push_back(node);
      start += count;
    }
    tree.levels_.push_back(std::move(above));
  }

  uint64_t offset = 0;
  for (const auto& l : tree.levels_) {
    tree.level_offsets_.push_back(offset);
    offset += l.size();
  }
  return tree;
}

int RTree::height() const {
  return levels_.empty() ? 0 : static_cast<int>(levels_.size()) - 1;
}

size_t RTree::node_count() const {
  size_t n = 0;
  for (const auto& l : levels_) n += l.size();
  return n;
}

std::optional<Rect> RTree::bounds() const {
  if (levels_.empty()) return std::nullopt;
  return levels_.back().front().mbr;
}

size_t RTree::RangeCount(const Circle& c) const {
  if (levels_.empty()) return 0;
  size_t count = 0;
  // (level, index) work list.
  std::vector<std::pair<uint32_t, uint32_t>> stack;
  stack.emplace_back(static_cast<uint32_t>(levels_.size() - 1), 0u);
  while (!stack.empty()) {
    auto [level, index] = stack.back();
    stack.pop_back();
    const Node& node = levels_[level][index];
    if (MinDist(c.center, node.mbr) > c.radius) continue;
    if (level == 0) {
      for (uint32_t i = node.first; i < node.first + node.count; ++i) {
        if (Dist(c.center, objects_[i].location) <= c.radius) ++count;
      }
    } else {
      for (uint32_t i = node.first; i < node.first + node.count; ++i) {
        stack.emplace_back(level - 1, i);
      }
    }
  }
  return count;
}

NnStream::NnStream(const RTree& tree, Point query)
    : tree_(&tree), query_(query) {
  if (!tree.levels_.empty()) {
    const uint32_t root_level = static_cast<uint32_t>(tree.levels_.size() - 1);
    queue_.push(Entry{MinDist(query, tree.levels_[root_level][0].mbr), false,
                      root_level, 0, tree.level_offsets_[root_level]});
  }
}

void NnStream::Expand(uint32_t level, uint32_t index) {
  ++io_.pages_read;
  const RTree::Node& node = tree_->levels_[level][index];
  if (level == 0) {
    for (uint32_t i = node.first; i < node.first + node.count; ++i) {
      const DataObject& o = tree_->objects_[i];
      queue_.push(Entry{Dist(query_, o.location), true, 0, i,
                        static_cast<uint64_t>(o.id)});
    }
    return;
  }
  const auto& children = tree_->levels_[level - 1];
  for (uint32_t i = node.first; i < node.first + node.count; ++i) {
    queue_.push(Entry{MinDist(query_, children[i].mbr), false, level - 1, i,
                      tree_->level_offsets_[level - 1] + i});
  }
}

std::optional<Neighbor> NnStream::Next() {
  while (!queue_.empty()) {
    const Entry e = queue_.top();
    queue_.pop();
    if (e.is_object) {
      const DataObject& o = tree_->objects_[e.index];
      return Neighbor{o.id, o.location, e.key};
    }
    Expand(e.level, e.index);
  }
  return std::nullopt;
}

double NnStream::PeekMinDist() const {
  return queue_.empty() ? std::numeric_limits<double>::infinity()
                        : queue_.top().key;
}

}  // namespace pmknn
