#pragma once

#include "incplan/planner.hpp"

namespace incplan {

/// Bidirectional RRT-Connect. Alternates growing a start tree and a goal
/// tree; after each successful extension the other tree greedily connects
/// toward the new state. Returns at the first connection — optionally after
/// spending the remaining query budget on shortcut smoothing.
class RrtConnectPlanner : public Planner {
  public:
    RrtConnectPlanner(const PlannerParams &params, bool smooth)
        : params_(params), smooth_(smooth) {}

    PlannerKind kind() const override {
        return smooth_ ? PlannerKind::RrtConnectSmoothed : PlannerKind::RrtConnect;
    }

    PlanResult plan(const PlanQuery &query) override;

  private:
    PlannerParams params_;
    bool smooth_;
};

} // namespace incplan
