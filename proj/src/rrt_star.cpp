#include "incplan/rrt_star.hpp"

#include <algorithm>
#include <vector>

#include "incplan/point_index.hpp"

namespace incplan {

namespace {

constexpr double kCostMargin = 1e-12; // required improvement before rewiring

struct Vertex {
    Point2 position;
    int parent = -1;
    double cost = 0.0;
    std::vector<int> children;
};

struct Graph {
    std::vector<Vertex> vertices;
    PointIndex index;

    int add(Point2 p, int parent, double cost) {
        const int id = static_cast<int>(vertices.size());
        vertices.push_back(Vertex{p, parent, cost, {}});
        if (parent >= 0) {
            vertices[static_cast<std::size_t>(parent)].children.push_back(id);
        }
        index.insert(p, static_cast<std::uint32_t>(id));
        return id;
    }

    // Moves v under new_parent and refreshes exact costs down v's subtree.
    void reparent(int v, int new_parent) {
        Vertex &vertex = vertices[static_cast<std::size_t>(v)];
        auto &siblings = vertices[static_cast<std::size_t>(vertex.parent)].children;
        siblings.erase(std::find(siblings.begin(), siblings.end(), v));
        vertex.parent = new_parent;
        vertices[static_cast<std::size_t>(new_parent)].children.push_back(v);
        std::vector<int> stack{v};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            Vertex &node = vertices[static_cast<std::size_t>(u)];
            const Vertex &up = vertices[static_cast<std::size_t>(node.parent)];
            node.cost = up.cost + distance(up.position, node.position);
            stack.insert(stack.end(), node.children.begin(), node.children.end());
        }
    }
};

} // namespace

PlanResult RrtStarPlanner::plan(const PlanQuery &query) {
    validate_query(query);
    const IncrementalView &view = *query.view;
    RandomStream rng(query.seed);
    BudgetTracker tracker(query.budget);
    PlanResult result;

    if (query.start == query.goal) {
        result.status = PlanStatus::Solved;
        result.path = Path({query.start});
        result.cost = 0.0;
        result.seconds_to_initial = tracker.elapsed_seconds();
        return result;
    }

    Graph graph;
    graph.add(query.start, -1, 0.0);
    int goal_id = -1;
    double best = std::numeric_limits<double>::infinity();

    while (!tracker.expired()) {
        tracker.tick();
        const Point2 target = sample_state(rng, view, query.goal, params_.goal_bias);
        const auto nearest = graph.index.nearest(target);
        const Point2 fresh = steer(nearest->position, target, params_.max_edge);
        if (!view.is_state_valid(fresh)) {
            continue;
        }

        const std::size_t k = rgg_k(graph.vertices.size(), params_.rrt_star_rewire_factor);
        auto neighbors = graph.index.k_nearest(fresh, k);
        // Connection candidates: the k-nearest set plus the nearest vertex,
        // restricted to the maximum edge length, tried in cost order.
        struct Candidate {
            int id;
            double through_cost;
        };
        std::vector<Candidate> candidates;
        bool duplicate = false;
        int vid = -1;
        auto consider = [&](const PointIndex::Entry &entry) {
            if (entry.position == fresh) {
                duplicate = true;
                vid = static_cast<int>(entry.id);
                return;
            }
            const double d = distance(entry.position, fresh);
            if (d > params_.max_edge) {
                return;
            }
            const int id = static_cast<int>(entry.id);
            for (const Candidate &c : candidates) {
                if (c.id == id) {
                    return;
                }
            }
            candidates.push_back(
                {id, graph.vertices[static_cast<std::size_t>(id)].cost + d});
        };
        for (const auto &entry : neighbors) {
            consider(entry);
        }
        consider(*nearest);
        std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
            if (a.through_cost != b.through_cost) {
                return a.through_cost < b.through_cost;
            }
            return a.id < b.id;
        });

        if (duplicate) {
            // The sample coincides with an existing vertex (the goal, under
            // goal bias): try to improve its parent instead of reinserting.
            Vertex &vertex = graph.vertices[static_cast<std::size_t>(vid)];
            for (const Candidate &c : candidates) {
                if (c.through_cost >= vertex.cost - kCostMargin) {
                    break;
                }
                if (view.is_motion_valid(graph.vertices[static_cast<std::size_t>(c.id)].position,
                                         vertex.position)) {
                    graph.reparent(vid, c.id);
                    break;
                }
            }
        } else {
            for (const Candidate &c : candidates) {
                if (view.is_motion_valid(graph.vertices[static_cast<std::size_t>(c.id)].position,
                                         fresh)) {
                    vid = graph.add(fresh, c.id, c.through_cost);
                    break;
                }
            }
            if (vid < 0) {
                continue; // no collision-free connection at this sample
            }
            if (fresh == query.goal) {
                goal_id = vid;
            }
        }

        // Rewire the neighborhood through the (new or improved) vertex.
        const Vertex &through = graph.vertices[static_cast<std::size_t>(vid)];
        for (const auto &entry : neighbors) {
            const int v = static_cast<int>(entry.id);
            if (v == vid || v == through.parent) {
                continue;
            }
            const double d = distance(entry.position, through.position);
            if (d > params_.max_edge) {
                continue;
            }
            Vertex &other = graph.vertices[static_cast<std::size_t>(v)];
            if (through.cost + d < other.cost - kCostMargin &&
                view.is_motion_valid(through.position, other.position)) {
                graph.reparent(v, vid);
            }
        }

        if (goal_id >= 0) {
            const double goal_cost = graph.vertices[static_cast<std::size_t>(goal_id)].cost;
            if (goal_cost < best - kCostMargin) {
                if (best == std::numeric_limits<double>::infinity()) {
                    result.seconds_to_initial = tracker.elapsed_seconds();
                    result.iterations_to_initial = tracker.used_iterations();
                }
                best = goal_cost;
                result.cost_trace.emplace_back(tracker.used_iterations(), best);
            }
        }
    }

    if (goal_id >= 0) {
        std::vector<Point2> waypoints;
        for (int v = goal_id; v != -1; v = graph.vertices[static_cast<std::size_t>(v)].parent) {
            waypoints.push_back(graph.vertices[static_cast<std::size_t>(v)].position);
        }
        std::reverse(waypoints.begin(), waypoints.end());
        result.status = PlanStatus::Solved;
        result.path = Path(std::move(waypoints));
        result.cost = graph.vertices[static_cast<std::size_t>(goal_id)].cost;
    }
    result.seconds_total = tracker.elapsed_seconds();
    result.iterations_total = tracker.used_iterations();

    last_tree_.clear();
    last_tree_.reserve(graph.vertices.size());
    for (const Vertex &v : graph.vertices) {
        last_tree_.push_back({v.position, v.parent, v.cost});
    }
    return result;
}

} // namespace incplan
