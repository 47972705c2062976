#include "incplan/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace incplan {

namespace {

// Corners are pushed outward along both axes so that a path hugging an
// obstacle clears its closed boundary.
constexpr double kCornerOffset = 1e-6;

void append_offset_corners(const AxisRect &rect, std::vector<Point2> &nodes) {
    nodes.push_back({rect.min.x - kCornerOffset, rect.min.y - kCornerOffset});
    nodes.push_back({rect.max.x + kCornerOffset, rect.min.y - kCornerOffset});
    nodes.push_back({rect.min.x - kCornerOffset, rect.max.y + kCornerOffset});
    nodes.push_back({rect.max.x + kCornerOffset, rect.max.y + kCornerOffset});
}

OracleResult visibility_dijkstra(const GlobalWorld &world, Point2 a, Point2 b,
                                 const std::function<bool(Point2)> &state_valid,
                                 const std::function<bool(Point2, Point2)> &motion_valid) {
    OracleResult result;
    if (!state_valid(a) || !state_valid(b)) {
        return result;
    }
    if (a == b) {
        result.feasible = true;
        result.path = Path({a});
        result.length = 0.0;
        return result;
    }

    std::vector<Point2> nodes{a, b};
    for (const AxisRect &rect : world.obstacles) {
        append_offset_corners(rect, nodes);
    }
    // Drop unreachable corner nodes (inside another obstacle or out of
    // bounds); indices 0 and 1 are the query endpoints and always stay.
    std::vector<Point2> usable;
    usable.reserve(nodes.size());
    usable.push_back(nodes[0]);
    usable.push_back(nodes[1]);
    for (std::size_t i = 2; i < nodes.size(); ++i) {
        if (state_valid(nodes[i])) {
            usable.push_back(nodes[i]);
        }
    }

    const std::size_t n = usable.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<char> done(n, 0);
    using QueueEntry = std::pair<double, std::size_t>; // (distance, node id)
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
    dist[0] = 0.0;
    queue.push({0.0, 0});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) {
            continue;
        }
        done[u] = 1;
        if (u == 1) {
            break;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || v == u) {
                continue;
            }
            const double step = distance(usable[u], usable[v]);
            if (d + step >= dist[v]) {
                continue; // cannot improve, skip the expensive edge test
            }
            if (!motion_valid(usable[u], usable[v])) {
                continue;
            }
            dist[v] = d + step;
            parent[v] = static_cast<int>(u);
            queue.push({dist[v], v});
        }
    }

    if (dist[1] == kInf) {
        return result;
    }
    std::vector<Point2> waypoints;
    for (int v = 1; v != -1; v = parent[v]) {
        waypoints.push_back(usable[static_cast<std::size_t>(v)]);
    }
    std::reverse(waypoints.begin(), waypoints.end());
    result.feasible = true;
    result.path = Path(std::move(waypoints));
    result.length = result.path.length();
    return result;
}

} // namespace

OracleResult oracle_shortest_path(const GlobalWorld &world, Point2 a, Point2 b) {
    return visibility_dijkstra(
        world, a, b, [&](Point2 p) { return global_state_valid(world, p); },
        [&](Point2 u, Point2 v) { return global_motion_valid(world, u, v); });
}

OracleResult oracle_shortest_path_in_view(const IncrementalView &view, Point2 a, Point2 b) {
    return visibility_dijkstra(
        view.world(), a, b, [&](Point2 p) { return view.is_state_valid(p); },
        [&](Point2 u, Point2 v) { return view.is_motion_valid(u, v); });
}

} // namespace incplan
