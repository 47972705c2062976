#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "incplan/planner.hpp"

namespace incplan {

/// Uniform draw from the informed set: the prolate hyperspheroid with foci
/// `start` and `goal` and transverse diameter `best_cost`, intersected with
/// `bounds`. Points that land outside the bounds, or whose heuristic value
/// exceeds best_cost after rounding, are redrawn. best_cost must be finite
/// and at least the focal distance.
Point2 sample_informed(RandomStream &rng, Point2 start, Point2 goal, double best_cost,
                       const AxisRect &bounds);

/// Sample graph shared by EIT*'s reverse and forward searches. Samples are
/// never erased: pruning marks them dead and the next adjacency rebuild
/// filters them. Edge collision results are cached at two tiers — sparse
/// (endpoints plus midpoint) for the reverse search and full (exact motion
/// test) for the forward search — and persist for the life of the query.
class EitGraph {
  public:
    static constexpr int kStart = 0;
    static constexpr int kGoal = 1;

    EitGraph(Point2 start, Point2 goal, const IncrementalView &view,
             const PlannerParams &params);

    const IncrementalView &view() const { return *view_; }
    std::size_t size() const { return samples_.size(); }
    std::size_t live_count() const { return live_count_; }
    Point2 sample(int id) const { return samples_[static_cast<std::size_t>(id)]; }
    bool alive(int id) const { return alive_[static_cast<std::size_t>(id)] != 0; }
    const std::vector<int> &neighbors(int id) const {
        return adjacency_[static_cast<std::size_t>(id)];
    }

    int add_sample(Point2 p);

    /// Marks dead every sample whose heuristic lower bound through it
    /// exceeds best_cost; start and goal always survive. Returns the number
    /// of samples newly marked.
    std::size_t prune(double best_cost);

    /// Rebuilds the symmetrized k-nearest-neighbor adjacency over the live
    /// samples, with k from the RGG bound over the live count.
    void rebuild_adjacency();

    /// Cost-ordered Dijkstra from the goal over sparsely validated edges.
    /// Recomputes the reverse cost and effort labels used as forward-search
    /// heuristics; edge efforts are scaled by effort_scale (1 for the batch
    /// pass, the repair factor when rerun after an invalidated edge). Pops
    /// consume budget units.
    void reverse_update(double effort_scale, BudgetTracker &tracker);

    double reverse_cost(int id) const { return rev_cost_[static_cast<std::size_t>(id)]; }
    double reverse_effort(int id) const { return rev_effort_[static_cast<std::size_t>(id)]; }
    /// Predecessor toward the goal in the reverse search tree (-1 at the goal
    /// and for unreached samples). A forward-detected collision only requires
    /// a reverse repair when the reverse tree actually used that edge.
    int reverse_parent(int id) const { return rev_parent_[static_cast<std::size_t>(id)]; }

    /// Cheap cached edge test: both endpoints are known valid, so this
    /// checks the midpoint only.
    bool sparse_edge_ok(int u, int v);

    /// Exact cached edge test.
    bool full_edge_ok(int u, int v);

    /// True when the edge is already known invalid at either tier.
    bool edge_known_bad(int u, int v) const;

  private:
    enum class Check : std::int8_t { Unknown = 0, Pass, Fail };

    const IncrementalView *view_;
    PlannerParams params_;
    std::vector<Point2> samples_;
    std::vector<std::uint8_t> alive_;
    std::size_t live_count_ = 0;
    std::vector<std::vector<int>> adjacency_;
    std::vector<double> rev_cost_;
    std::vector<double> rev_effort_;
    std::vector<int> rev_parent_;
    std::unordered_map<std::uint64_t, Check> sparse_cache_;
    std::unordered_map<std::uint64_t, Check> full_cache_;

    static std::uint64_t edge_cache_key(int u, int v);
    double edge_effort(int u, int v) const;
};

/// EIT* specialized to this problem family: batches of uniformly (then
/// informed) drawn samples, a sparse reverse search that computes admissible
/// cost and effort heuristics, and a forward edge queue that fully validates
/// edges in best-first order. An invalidated edge triggers a reverse repair
/// with inflated effort. Stops early when the current solution provably
/// cannot be improved (it matches the straight-line distance).
class EitStarPlanner : public Planner {
  public:
    explicit EitStarPlanner(const PlannerParams &params) : params_(params) {}

    PlannerKind kind() const override { return PlannerKind::EitStar; }

    PlanResult plan(const PlanQuery &query) override;

  private:
    PlannerParams params_;
};

} // namespace incplan
