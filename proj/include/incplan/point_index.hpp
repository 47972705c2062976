#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "incplan/geometry.hpp"

namespace incplan {

/// Exact nearest-neighbor index over identified 2-d points: a kd-tree with a
/// small linear insertion buffer that is folded in by periodic rebuilds.
/// Queries are deterministic — candidates are ordered by squared distance
/// with ids breaking ties — and never miss boundary cases: subtrees are only
/// pruned when they are strictly farther than the current k-th candidate.
class PointIndex {
  public:
    struct Entry {
        Point2 position;
        std::uint32_t id = 0;
    };

    std::size_t size() const { return tree_.size() + pending_.size(); }
    bool empty() const { return size() == 0; }

    /// Adds a point under a caller-chosen id; throws std::invalid_argument
    /// when the id is already present.
    void insert(Point2 position, std::uint32_t id);

    /// Closest entry to q, or nullopt when the index is empty.
    std::optional<Entry> nearest(Point2 q) const;

    /// Up to k closest entries to q, sorted by (squared distance, id).
    /// `keep`, when given, restricts candidates to ids with keep[id] != 0.
    std::vector<Entry> k_nearest(Point2 q, std::size_t k,
                                 const std::vector<std::uint8_t> *keep = nullptr) const;

    /// Every entry within the closed radius, sorted by (squared distance, id).
    std::vector<Entry> within_radius(Point2 q, double radius) const;

  private:
    struct Node {
        Entry entry;
        int left = -1;
        int right = -1;
        std::uint8_t axis = 0;
    };

    std::vector<Node> tree_;
    int root_ = -1;
    std::vector<Entry> pending_;
    std::unordered_set<std::uint32_t> ids_;

    void rebuild();
    int build_subtree(std::vector<Entry> &entries, std::size_t lo, std::size_t hi, int depth);
};

} // namespace incplan
