#pragma once

#include <cstdint>
#include <queue>
#include <unordered_set>
#include <vector>

#include "incplan/planner.hpp"
#include "incplan/point_index.hpp"

namespace incplan {

/// RRT^X rooted at the goal. The graph persists across the queries of a
/// trial: each query re-anchors the robot by inserting its current state,
/// and world changes arrive through notify_changes(), which re-validates
/// every stored edge against the new view, severs invalidated tree edges,
/// orphans the affected subtrees, and seeds the rewiring cascade. Detection
/// and bookkeeping are not charged to any budget — only the repair work the
/// next plan() call performs is. With a consistency epsilon of zero the
/// cascade runs to full quiescence (g == lmc everywhere) when given time.
class RrtxPlanner : public Planner {
  public:
    RrtxPlanner(const PlannerParams &params, bool initial_only)
        : params_(params), initial_only_(initial_only) {}

    PlannerKind kind() const override {
        return initial_only_ ? PlannerKind::RrtxInitial : PlannerKind::Rrtx;
    }

    PlanResult plan(const PlanQuery &query) override;
    NotifyStats notify_changes(const IncrementalView &view) override;

    /// Read-only introspection used by the repair-exactness tests.
    struct VertexView {
        Point2 position;
        double g = 0.0;
        double lmc = 0.0;
        int parent = -1;
    };
    std::size_t vertex_count() const { return vertices_.size(); }
    VertexView vertex_view(std::size_t id) const;
    /// Unblocked neighbor edges as (u, v) pairs with u < v.
    std::vector<std::pair<int, int>> neighbor_edges() const;
    /// Tree edges as (child, parent) pairs.
    std::vector<std::pair<int, int>> tree_edges() const;
    bool inconsistency_queue_empty() const;
    /// Runs the repair cascade to quiescence with no budget, so the settled
    /// labels can be examined (epsilon = 0 makes g = lmc everywhere
    /// afterward). Returns the number of queue entries processed.
    std::size_t settle();

  private:
    struct Vertex {
        Point2 position;
        double g = 0.0;
        double lmc = 0.0;
        int parent = -1;
        std::vector<int> neighbors; // undirected, kept mutually
        std::vector<int> children;
    };

    struct QueueEntry {
        double key = 0.0;
        int id = -1;
    };
    struct QueueOrder {
        bool operator()(const QueueEntry &a, const QueueEntry &b) const {
            if (a.key != b.key) {
                return a.key > b.key;
            }
            return a.id > b.id;
        }
    };

    PlannerParams params_;
    bool initial_only_ = false;

    std::vector<Vertex> vertices_;
    PointIndex index_;
    std::unordered_set<std::uint64_t> blocked_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue_;
    Point2 robot_;
    int robot_id_ = -1;
    int root_id_ = -1;
    const IncrementalView *view_ = nullptr;

    static std::uint64_t edge_key(int u, int v);
    bool edge_blocked(int u, int v) const;
    double vertex_key(const Vertex &v) const;
    void queue_push(int id);
    void rebuild_queue();
    bool vertex_inconsistent(const Vertex &v) const;
    void set_parent(int child, int parent);
    void detach_from_parent(int child);
    int insert_vertex(Point2 position);
    void update_lmc(int v);
    void rewire_neighbours(int v);
    /// Pops and processes one queue entry; returns false on a stale entry.
    bool process_queue_top();
    bool robot_connected() const;
};

} // namespace incplan
