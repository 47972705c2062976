#pragma once

#include <vector>

#include "incplan/planner.hpp"

namespace incplan {

/// Single-tree RRT* with k-nearest rewiring. Samples with goal bias, keeps
/// every edge at most max_edge long, rewires through new vertices when that
/// lowers cost-to-come, and propagates improvements to whole subtrees. Runs
/// for its full budget and reports the best goal path found.
class RrtStarPlanner : public Planner {
  public:
    explicit RrtStarPlanner(const PlannerParams &params) : params_(params) {}

    PlannerKind kind() const override { return PlannerKind::RrtStar; }

    PlanResult plan(const PlanQuery &query) override;

    /// Final tree of the last plan() call, for the cost-consistency tests:
    /// cost(v) == cost(parent(v)) + |v - parent(v)| and root cost 0.
    struct TreeVertex {
        Point2 position;
        int parent = -1;
        double cost = 0.0;
    };
    const std::vector<TreeVertex> &last_tree() const { return last_tree_; }

  private:
    PlannerParams params_;
    std::vector<TreeVertex> last_tree_;
};

} // namespace incplan
