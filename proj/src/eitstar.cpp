#include "incplan/eitstar.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "incplan/point_index.hpp"

namespace incplan {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack under which a solution counts as provably optimal (straight line).
constexpr double kOptimalSlack = 1e-9;
} // namespace

Point2 sample_informed(RandomStream &rng, Point2 start, Point2 goal, double best_cost,
                       const AxisRect &bounds) {
    const double c_min = distance(start, goal);
    if (!(best_cost >= c_min) || best_cost == kInf) {
        throw std::invalid_argument("informed set needs a finite cost >= focal distance");
    }
    const Point2 center = lerp(start, goal, 0.5);
    const double a = best_cost / 2.0; // semi-major axis, along the foci
    const double b = 0.5 * std::sqrt(std::max(best_cost * best_cost - c_min * c_min, 0.0));
    double cos_t = 1.0;
    double sin_t = 0.0;
    if (c_min > 0.0) {
        cos_t = (goal.x - start.x) / c_min;
        sin_t = (goal.y - start.y) / c_min;
    }
    while (true) {
        // Uniform point in the unit disc by rejection from the square.
        double ux;
        double uy;
        do {
            ux = rng.uniform(-1.0, 1.0);
            uy = rng.uniform(-1.0, 1.0);
        } while (ux * ux + uy * uy > 1.0);
        const double ex = ux * a;
        const double ey = uy * b;
        const Point2 p{center.x + ex * cos_t - ey * sin_t, center.y + ex * sin_t + ey * cos_t};
        if (!bounds.contains(p)) {
            continue;
        }
        // Rounding can push a boundary draw just outside the informed set;
        // such draws are rejected rather than clamped.
        if (distance(start, p) + distance(p, goal) > best_cost) {
            continue;
        }
        return p;
    }
}

EitGraph::EitGraph(Point2 start, Point2 goal, const IncrementalView &view,
                   const PlannerParams &params)
    : view_(&view), params_(params) {
    add_sample(start);
    add_sample(goal);
}

std::uint64_t EitGraph::edge_cache_key(int u, int v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

double EitGraph::edge_effort(int u, int v) const {
    // Effort counts the collision probes a full validation would spend.
    const double d = distance(samples_[static_cast<std::size_t>(u)],
                              samples_[static_cast<std::size_t>(v)]);
    return std::ceil(d / view_->resolution());
}

int EitGraph::add_sample(Point2 p) {
    const int id = static_cast<int>(samples_.size());
    samples_.push_back(p);
    alive_.push_back(1);
    ++live_count_;
    return id;
}

std::size_t EitGraph::prune(double best_cost) {
    std::size_t marked = 0;
    const Point2 start = samples_[kStart];
    const Point2 goal = samples_[kGoal];
    for (std::size_t id = 2; id < samples_.size(); ++id) {
        if (!alive_[id]) {
            continue;
        }
        const double bound = distance(start, samples_[id]) + distance(samples_[id], goal);
        if (bound > best_cost + 1e-12) {
            alive_[id] = 0;
            --live_count_;
            ++marked;
        }
    }
    return marked;
}

void EitGraph::rebuild_adjacency() {
    PointIndex index;
    for (std::size_t id = 0; id < samples_.size(); ++id) {
        if (alive_[id]) {
            index.insert(samples_[id], static_cast<std::uint32_t>(id));
        }
    }
    const std::size_t k = rgg_k(live_count_, params_.eit_radius_factor);
    adjacency_.assign(samples_.size(), {});
    for (std::size_t id = 0; id < samples_.size(); ++id) {
        if (!alive_[id]) {
            continue;
        }
        // k+1 because the sample itself sits at distance zero in the index.
        const auto found = index.k_nearest(samples_[id], k + 1);
        for (const auto &entry : found) {
            if (entry.id == id) {
                continue;
            }
            adjacency_[id].push_back(static_cast<int>(entry.id));
        }
        if (adjacency_[id].size() > k) {
            adjacency_[id].resize(k);
        }
    }
    // Symmetrize: a k-NN edge connects both endpoints.
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        for (int v : adjacency_[u]) {
            adjacency_[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
        }
    }
    for (auto &list : adjacency_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

bool EitGraph::sparse_edge_ok(int u, int v) {
    const std::uint64_t key = edge_cache_key(u, v);
    auto &entry = sparse_cache_[key];
    if (entry == Check::Unknown) {
        const Point2 mid = lerp(samples_[static_cast<std::size_t>(u)],
                                samples_[static_cast<std::size_t>(v)], 0.5);
        entry = view_->is_state_valid(mid) ? Check::Pass : Check::Fail;
    }
    return entry == Check::Pass;
}

bool EitGraph::full_edge_ok(int u, int v) {
    const std::uint64_t key = edge_cache_key(u, v);
    auto &entry = full_cache_[key];
    if (entry == Check::Unknown) {
        const bool ok = view_->is_motion_valid(samples_[static_cast<std::size_t>(u)],
                                               samples_[static_cast<std::size_t>(v)]);
        entry = ok ? Check::Pass : Check::Fail;
    }
    return entry == Check::Pass;
}

bool EitGraph::edge_known_bad(int u, int v) const {
    const std::uint64_t key = edge_cache_key(u, v);
    if (const auto it = full_cache_.find(key);
        it != full_cache_.end() && it->second == Check::Fail) {
        return true;
    }
    if (const auto it = sparse_cache_.find(key);
        it != sparse_cache_.end() && it->second == Check::Fail) {
        return true;
    }
    return false;
}

void EitGraph::reverse_update(double effort_scale, BudgetTracker &tracker) {
    rev_cost_.assign(samples_.size(), kInf);
    rev_effort_.assign(samples_.size(), kInf);
    rev_parent_.assign(samples_.size(), -1);
    rev_cost_[kGoal] = 0.0;
    rev_effort_[kGoal] = 0.0;
    using Entry = std::pair<double, int>; // (cost, id)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.push({0.0, kGoal});
    while (!queue.empty() && !tracker.expired()) {
        const auto [cost, v] = queue.top();
        queue.pop();
        if (cost != rev_cost_[static_cast<std::size_t>(v)]) {
            continue; // stale
        }
        tracker.tick();
        for (int u : adjacency_[static_cast<std::size_t>(v)]) {
            if (!alive_[static_cast<std::size_t>(u)]) {
                continue;
            }
            // Fully invalidated edges are gone for good; otherwise the
            // sparse test decides whether the reverse search may use it.
            const std::uint64_t key = edge_cache_key(u, v);
            if (const auto it = full_cache_.find(key);
                it != full_cache_.end() && it->second == Check::Fail) {
                continue;
            }
            if (!sparse_edge_ok(u, v)) {
                continue;
            }
            const double next = cost + distance(samples_[static_cast<std::size_t>(u)],
                                                samples_[static_cast<std::size_t>(v)]);
            if (next < rev_cost_[static_cast<std::size_t>(u)]) {
                rev_cost_[static_cast<std::size_t>(u)] = next;
                rev_effort_[static_cast<std::size_t>(u)] =
                    rev_effort_[static_cast<std::size_t>(v)] + effort_scale * edge_effort(u, v);
                rev_parent_[static_cast<std::size_t>(u)] = v;
                queue.push({next, u});
            }
        }
    }
}

namespace {

// Forward edge-queue entry ordered by total estimated solution cost, with
// the target's effort estimate and the ids as deterministic tie breaks.
struct ForwardEdge {
    double f = 0.0;
    double effort = 0.0;
    int u = -1;
    int v = -1;
};

struct ForwardOrder {
    bool operator()(const ForwardEdge &a, const ForwardEdge &b) const {
        if (a.f != b.f) {
            return a.f > b.f;
        }
        if (a.effort != b.effort) {
            return a.effort > b.effort;
        }
        if (a.u != b.u) {
            return a.u > b.u;
        }
        return a.v > b.v;
    }
};

} // namespace

PlanResult EitStarPlanner::plan(const PlanQuery &query) {
    validate_query(query);
    const IncrementalView &view = *query.view;
    RandomStream rng(query.seed);
    BudgetTracker tracker(query.budget);
    PlanResult result;

    EitGraph graph(query.start, query.goal, view, params_);
    const double direct = distance(query.start, query.goal);
    double best = kInf;
    std::vector<Point2> best_waypoints;

    std::vector<double> g;
    std::vector<int> parent;
    std::priority_queue<ForwardEdge, std::vector<ForwardEdge>, ForwardOrder> queue;

    const auto edge_f = [&](int u, int v) {
        return g[static_cast<std::size_t>(u)] +
               distance(graph.sample(u), graph.sample(v)) + graph.reverse_cost(v);
    };
    const auto push_out_edges = [&](int u) {
        for (int v : graph.neighbors(u)) {
            if (!graph.alive(v) || graph.edge_known_bad(u, v)) {
                continue;
            }
            if (graph.reverse_cost(v) == kInf) {
                continue; // cannot reach the goal through v yet
            }
            const double f = edge_f(u, v);
            if (f < best) {
                queue.push(ForwardEdge{f, graph.reverse_effort(v), u, v});
            }
        }
    };
    const auto record_solution = [&]() {
        std::vector<Point2> waypoints;
        for (int v = EitGraph::kGoal; v != -1; v = parent[static_cast<std::size_t>(v)]) {
            waypoints.push_back(graph.sample(v));
        }
        std::reverse(waypoints.begin(), waypoints.end());
        best_waypoints = std::move(waypoints);
        if (best == kInf) {
            result.seconds_to_initial = tracker.elapsed_seconds();
            result.iterations_to_initial = tracker.used_iterations();
        }
        best = g[EitGraph::kGoal];
        result.cost_trace.emplace_back(tracker.used_iterations(), best);
    };

    while (!tracker.expired()) {
        // --- Sampling: one batch of valid states, uniform before the first
        // solution and informed afterwards.
        int accepted = 0;
        while (accepted < params_.eit_batch_size && !tracker.expired()) {
            tracker.tick();
            const Point2 candidate =
                best == kInf ? rng.uniform_in_rect(view.bounds())
                             : sample_informed(rng, query.start, query.goal, best, view.bounds());
            if (!view.is_state_valid(candidate)) {
                continue;
            }
            graph.add_sample(candidate);
            ++accepted;
        }
        if (tracker.expired()) {
            break;
        }

        // --- Prune against the current solution, then rebuild the graph.
        if (best < kInf) {
            graph.prune(best);
        }
        graph.rebuild_adjacency();
        graph.reverse_update(1.0, tracker);

        // --- Forward search over the batch's graph. Cost-to-come labels are
        // only ever derived from fully validated edges, so they survive
        // repairs; a sweep restarts from that validated frontier.
        const std::size_t n = graph.size();
        g.assign(n, kInf);
        parent.assign(n, -1);
        g[EitGraph::kStart] = 0.0;
        bool sweep_again = true;
        while (sweep_again && !tracker.expired()) {
            sweep_again = false;
            bool heuristics_contaminated = false;
            queue = {};
            for (std::size_t u = 0; u < n; ++u) {
                if (g[u] < kInf && graph.alive(static_cast<int>(u))) {
                    push_out_edges(static_cast<int>(u));
                }
            }
            while (!queue.empty() && !tracker.expired()) {
                tracker.tick();
                const ForwardEdge edge = queue.top();
                queue.pop();
                if (edge.f >= best) {
                    break; // nothing left that could improve the solution
                }
                if (edge.f != edge_f(edge.u, edge.v)) {
                    continue; // stale: the source's cost-to-come moved on
                }
                const double through = g[static_cast<std::size_t>(edge.u)] +
                                       distance(graph.sample(edge.u), graph.sample(edge.v));
                if (through >= g[static_cast<std::size_t>(edge.v)]) {
                    continue;
                }
                if (!graph.full_edge_ok(edge.u, edge.v)) {
                    // The failed check is cached, so this edge is gone for
                    // good, and labels computed assuming it merely
                    // under-estimate a graph that only lost edges — still
                    // admissible. The sweep therefore keeps going and flushes
                    // every reachable dead edge in one pass; a repair is
                    // needed afterwards only when the reverse tree itself
                    // carried its labels across this edge.
                    if (graph.reverse_parent(edge.u) == edge.v ||
                        graph.reverse_parent(edge.v) == edge.u) {
                        heuristics_contaminated = true;
                    }
                    continue;
                }
                g[static_cast<std::size_t>(edge.v)] = through;
                parent[static_cast<std::size_t>(edge.v)] = edge.u;
                if (edge.v == EitGraph::kGoal) {
                    record_solution();
                } else {
                    push_out_edges(edge.v);
                }
            }
            if (heuristics_contaminated && !tracker.expired()) {
                // Repair: rerun the reverse search minus the dead edges, with
                // inflated effort to bias the next sweep toward regions that
                // have not been disproven yet.
                graph.reverse_update(params_.eit_repair_factor, tracker);
                sweep_again = true;
            }
        }

        if (best <= direct + kOptimalSlack) {
            result.early_exit = true;
            break;
        }
    }

    if (best < kInf) {
        result.status = PlanStatus::Solved;
        result.path = Path(std::move(best_waypoints));
        result.cost = result.path.length();
    }
    result.seconds_total = tracker.elapsed_seconds();
    result.iterations_total = tracker.used_iterations();
    return result;
}

} // namespace incplan
