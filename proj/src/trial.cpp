#include "incplan/trial.hpp"

#include <cmath>

namespace incplan {

TrialOutcome run_trial(const TrialSetup &setup) {
    TrialOutcome outcome;
    SensedRegion region(setup.sensor_range);
    region.sense(setup.world.start);
    const auto planner = make_planner(setup.planner, setup.params);

    Point2 robot = setup.world.start;
    Path global_path({robot});
    int stalled_queries = 0;

    for (int qi = 1; qi <= setup.max_queries; ++qi) {
        const IncrementalView view(setup.world, region);
        QueryRecord record;
        record.index = qi;
        record.from = robot;
        record.notify = planner->notify_changes(view);

        PlanQuery query;
        query.start = robot;
        query.goal = setup.world.goal;
        query.view = &view;
        query.budget = setup.budget;
        query.seed = mix_seed(setup.seed, static_cast<std::uint64_t>(qi));
        const PlanResult plan = planner->plan(query);

        record.solved = plan.solved();
        record.plan_cost = plan.cost;
        record.plan_seconds = plan.seconds_total;
        record.plan_iterations = plan.iterations_total;
        record.early_exit = plan.early_exit;
        outcome.global_seconds += plan.seconds_total;
        outcome.global_iterations += plan.iterations_total;

        if (!plan.solved()) {
            outcome.failure_reason = "planner_failed";
            outcome.queries.push_back(std::move(record));
            break;
        }
        ++outcome.query_count;

        const double s = exit_parameter(plan.path, region);
        const Path followed = plan.path.prefix(s);
        record.exit_param = s;
        record.followed_length = followed.length();
        record.followed = followed.waypoints();
        outcome.queries.push_back(std::move(record));

        global_path.append(followed);
        robot = followed.back();

        if (s >= 1.0) {
            outcome.success = true;
            break;
        }
        // Guard against a degenerate loop where queries stop advancing. The
        // sensing radius exceeds the resolution, so this cannot trigger for
        // a sound planner; it bounds the damage if one misbehaves.
        if (followed.length() < view.resolution()) {
            if (++stalled_queries >= 2) {
                outcome.failure_reason = "no_progress";
                break;
            }
        } else {
            stalled_queries = 0;
        }
        region.sense(robot);
    }

    if (!outcome.success && outcome.failure_reason.empty()) {
        outcome.failure_reason = "max_queries";
    }
    outcome.global_path = std::move(global_path);
    if (outcome.success) {
        outcome.global_length = outcome.global_path.length();
    }
    return outcome;
}

bool replay_path_valid(const GlobalWorld &world, const Path &path, double resolution) {
    if (path.empty()) {
        return false;
    }
    const auto &pts = path.waypoints();
    if (!global_state_valid(world, pts.front())) {
        return false;
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double d = distance(pts[i], pts[i + 1]);
        const int steps = std::max(1, static_cast<int>(std::ceil(d / resolution)));
        for (int j = 1; j <= steps; ++j) {
            const Point2 p = lerp(pts[i], pts[i + 1], static_cast<double>(j) / steps);
            if (!global_state_valid(world, p)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace incplan
