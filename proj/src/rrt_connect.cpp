#include "incplan/rrt_connect.hpp"

#include <algorithm>
#include <vector>

#include "incplan/point_index.hpp"
#include "incplan/smoothing.hpp"

namespace incplan {

namespace {

struct TreeNode {
    Point2 position;
    int parent = -1;
};

struct Tree {
    std::vector<TreeNode> nodes;
    PointIndex index;

    explicit Tree(Point2 root) { add(root, -1); }

    int add(Point2 p, int parent) {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(TreeNode{p, parent});
        index.insert(p, static_cast<std::uint32_t>(id));
        return id;
    }

    std::vector<Point2> chain_to_root(int id) const {
        std::vector<Point2> out;
        for (int v = id; v != -1; v = nodes[static_cast<std::size_t>(v)].parent) {
            out.push_back(nodes[static_cast<std::size_t>(v)].position);
        }
        return out;
    }
};

} // namespace

PlanResult RrtConnectPlanner::plan(const PlanQuery &query) {
    validate_query(query);
    const IncrementalView &view = *query.view;
    RandomStream rng(query.seed);
    BudgetTracker tracker(query.budget);
    PlanResult result;

    Tree start_tree(query.start);
    Tree goal_tree(query.goal);
    // grow points at the tree extended this round; it starts as the start
    // tree and the roles swap every iteration.
    Tree *grow = &start_tree;
    Tree *connect = &goal_tree;

    int meet_grow = -1;    // meeting node in the grown tree
    int meet_connect = -1; // meeting node in the connecting tree
    if (query.start == query.goal) {
        meet_grow = 0;
        meet_connect = 0;
    }

    while (meet_grow < 0 && !tracker.expired()) {
        tracker.tick();
        const Point2 target = rng.uniform_in_rect(view.bounds());
        const auto nearest = grow->index.nearest(target);
        const Point2 reached = steer(nearest->position, target, params_.max_edge);
        if (reached == nearest->position ||
            !view.is_motion_valid(nearest->position, reached)) {
            std::swap(grow, connect);
            continue;
        }
        const int grown = grow->add(reached, static_cast<int>(nearest->id));

        // Greedy connect: march the other tree toward the new state until it
        // arrives or hits an obstacle. Each step is a budget unit.
        int cursor = static_cast<int>(connect->index.nearest(reached)->id);
        while (!tracker.expired()) {
            tracker.tick();
            const Point2 from = connect->nodes[static_cast<std::size_t>(cursor)].position;
            const Point2 step = steer(from, reached, params_.max_edge);
            if (!view.is_motion_valid(from, step)) {
                break;
            }
            cursor = connect->add(step, cursor);
            if (step == reached) {
                meet_grow = grown;
                meet_connect = cursor;
                break;
            }
        }
        std::swap(grow, connect);
    }

    if (meet_grow < 0) {
        result.seconds_total = tracker.elapsed_seconds();
        result.iterations_total = tracker.used_iterations();
        return result;
    }

    // Stitch the two root chains together, oriented start -> goal. After the
    // final swap above, `grow` points at the tree that ran the connect step.
    const Tree *grown_tree = connect;
    const Tree *connect_tree = grow;
    std::vector<Point2> forward = grown_tree->chain_to_root(meet_grow);
    std::reverse(forward.begin(), forward.end()); // root .. meeting point
    const std::vector<Point2> backward = connect_tree->chain_to_root(meet_connect);
    forward.insert(forward.end(), backward.begin(), backward.end());
    if (grown_tree != &start_tree) {
        std::reverse(forward.begin(), forward.end());
    }
    Path path(std::move(forward));

    result.status = PlanStatus::Solved;
    result.seconds_to_initial = tracker.elapsed_seconds();
    result.iterations_to_initial = tracker.used_iterations();
    result.cost_trace.emplace_back(tracker.used_iterations(), path.length());

    if (smooth_) {
        path = shortcut_smooth(path, view, rng, tracker);
        result.cost_trace.emplace_back(tracker.used_iterations(), path.length());
    }
    result.path = std::move(path);
    result.cost = result.path.length();
    result.seconds_total = tracker.elapsed_seconds();
    result.iterations_total = tracker.used_iterations();
    return result;
}

} // namespace incplan
