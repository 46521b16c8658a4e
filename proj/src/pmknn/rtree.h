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

#ifndef PMKNN_RTREE_H_
#define PMKNN_RTREE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "absl/status/statusor.h"
#include "pmknn/geometry.h"

namespace pmknn {

struct DataObject {
  int64_t id = 0;
  Point location;

  friend bool operator==(const DataObject&, const DataObject&) = default;
};

struct IoStats {
  uint64_t pages_read = 0;
};

// Static R-tree packed with sort-tile-recursive bulk loading. Each node
// models one disk page; node visits are what IoStats counts.
class RTree {
 public:
  // 1 KB pages hold 50 entries.
  static constexpr int kDefaultCapacity = 50;

  static absl::StatusOr<RTree> Build(std::vector<DataObject> objects,
                                     int capacity = kDefaultCapacity);

  size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  int capacity() const { return capacity_; }
  // Number of levels above the leaves; a single leaf has height 0.
  int height() const;
  size_t node_count() const;

  // Objects in leaf order (a full scan of the leaves).
  const std::vector<DataObject>& objects() const { return objects_; }

  // Number of objects p with dist(center, p) <= radius.
  size_t RangeCount(const Circle& c) const;

  std::optional<Rect> bounds() const;

 private:
  friend class NnStream;

  struct Node {
    Rect mbr;
    // Children are levels_[level - 1][first, first + count), or
    // objects_[first, first + count) for leaves.
    uint32_t first = 0;
    uint32_t count = 0;
  };

  RTree() = default;

  int capacity_ = kDefaultCapacity;
  std::vector<DataObject> objects_;
  // levels_[0] holds the leaves; levels_.back() holds the single root.
  std::vector<std::vector<Node>> levels_;
  std::vector<uint64_t> level_offsets_;
};

struct Neighbor {
  int64_t id = 0;
  Point location;
  double distance = 0.0;
};

// Incremental best-first nearest-neighbor search. Objects come out in
// nondecreasing distance from the query point. The tree must outlive the
// stream.
class NnStream {
 public:
  NnStream(const RTree& tree, Point query);

  // Next nearest object, or nullopt once every object has been emitted.
  std::optional<Neighbor> Next();

  // Key of the queue head: a lower bound on every future emission distance.
  // Infinity when the stream is exhausted.
  double PeekMinDist() const;

  const IoStats& io() const { return io_; }
  Point query() const { return query_; }

 private:
  struct Entry {
    double key;
    bool is_object;
    uint32_t level;
    uint32_t index;
    uint64_t tie;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key > b.key;
      if (a.is_object != b.is_object) return a.is_object;
      return a.tie > b.tie;
    }
  };

  void Expand(uint32_t level, uint32_t index);

  const RTree* tree_;
  Point query_;
  IoStats io_;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
};

}  // namespace pmknn

#endif  // PMKNN_RTREE_H_
