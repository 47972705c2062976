#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "incplan/planner.hpp"
#include "incplan/world.hpp"

namespace incplan {

/// One sense-plan-follow round inside a trial.
struct QueryRecord {
    int index = 0; // 1-based query number
    Point2 from;   // robot state when the query was issued
    bool solved = false;
    double plan_cost = std::numeric_limits<double>::infinity();
    double plan_seconds = 0.0;
    std::uint64_t plan_iterations = 0;
    bool early_exit = false;
    double exit_param = 0.0;      // s_i: where the plan leaves sensed space
    double followed_length = 0.0; // arc length of the followed prefix
    std::vector<Point2> followed; // the followed prefix itself
    NotifyStats notify;           // world-change bookkeeping (RRT^X)
};

struct TrialOutcome {
    bool success = false;
    std::string failure_reason; // empty | planner_failed | no_progress | max_queries
    int query_count = 0;        // solved queries, the paper's query metric
    double global_length = std::numeric_limits<double>::infinity();
    double global_seconds = 0.0;           // total planning wall time
    std::uint64_t global_iterations = 0;   // total planning iterations
    Path global_path;                      // concatenation of followed prefixes
    std::vector<QueryRecord> queries;
};

struct TrialSetup {
    GlobalWorld world;
    PlannerKind planner = PlannerKind::EitStar;
    PlannerParams params;
    double sensor_range = 0.1;
    Budget budget; // per query
    std::uint64_t seed = 0;
    int max_queries = 1000;
};

/// Runs one incremental trial: sense at the robot, snapshot the view, plan
/// start-to-goal, follow the path to the boundary of sensed space, sense
/// again, repeat. Succeeds when a followed prefix reaches the goal; fails
/// when a query fails, progress stalls below the collision resolution on
/// two consecutive queries, or the query cap is hit. Each query gets a seed
/// derived from (trial seed, query index).
TrialOutcome run_trial(const TrialSetup &setup);

/// Independent sampled validation of an executed path against the ground
/// truth world: probes every segment at the collision resolution and the
/// waypoints themselves. Deliberately not the exact interval test the
/// planners use.
bool replay_path_valid(const GlobalWorld &world, const Path &path,
                       double resolution = kCollisionResolution);

} // namespace incplan
