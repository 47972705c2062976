#include "incplan/rrtx.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace incplan {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostMargin = 1e-12;
} // namespace

std::uint64_t RrtxPlanner::edge_key(int u, int v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

bool RrtxPlanner::edge_blocked(int u, int v) const {
    return blocked_.count(edge_key(u, v)) != 0;
}

double RrtxPlanner::vertex_key(const Vertex &v) const {
    return std::min(v.g, v.lmc) + distance(v.position, robot_);
}

bool RrtxPlanner::vertex_inconsistent(const Vertex &v) const {
    // g and lmc are only ever assigned equal, so exact comparison is safe.
    return v.g != v.lmc;
}

void RrtxPlanner::queue_push(int id) {
    queue_.push(QueueEntry{vertex_key(vertices_[static_cast<std::size_t>(id)]), id});
}

void RrtxPlanner::rebuild_queue() {
    queue_ = {};
    for (std::size_t id = 0; id < vertices_.size(); ++id) {
        if (vertex_inconsistent(vertices_[id])) {
            queue_push(static_cast<int>(id));
        }
    }
}

void RrtxPlanner::set_parent(int child, int parent) {
    detach_from_parent(child);
    vertices_[static_cast<std::size_t>(child)].parent = parent;
    vertices_[static_cast<std::size_t>(parent)].children.push_back(child);
}

void RrtxPlanner::detach_from_parent(int child) {
    Vertex &vertex = vertices_[static_cast<std::size_t>(child)];
    if (vertex.parent < 0) {
        return;
    }
    auto &siblings = vertices_[static_cast<std::size_t>(vertex.parent)].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), child));
    vertex.parent = -1;
}

int RrtxPlanner::insert_vertex(Point2 position) {
    const int id = static_cast<int>(vertices_.size());
    // Candidate neighborhood: the k-nearest vertices plus anything the RGG
    // bound misses is acceptable; edges are capped at the maximum length and
    // each one is collision checked against the current view exactly once.
    const std::size_t k = rgg_k(vertices_.size(), params_.rrtx_rewire_factor);
    const auto candidates = index_.k_nearest(position, k);
    vertices_.push_back(Vertex{position, kInf, kInf, -1, {}, {}});
    index_.insert(position, static_cast<std::uint32_t>(id));
    Vertex &fresh = vertices_.back();

    double best_lmc = kInf;
    int best_parent = -1;
    for (const auto &entry : candidates) {
        const double d = distance(entry.position, position);
        if (d > params_.max_edge || d == 0.0) {
            continue;
        }
        if (!view_->is_motion_valid(entry.position, position)) {
            continue;
        }
        const int other = static_cast<int>(entry.id);
        fresh.neighbors.push_back(other);
        vertices_[static_cast<std::size_t>(other)].neighbors.push_back(id);
        const double through = vertices_[static_cast<std::size_t>(other)].lmc + d;
        if (through < best_lmc - kCostMargin ||
            (through < best_lmc + kCostMargin && other < best_parent)) {
            best_lmc = through;
            best_parent = other;
        }
    }
    if (best_parent >= 0 && best_lmc < kInf) {
        fresh.lmc = best_lmc;
        set_parent(id, best_parent);
        queue_push(id); // g = inf != lmc
    }
    return id;
}

void RrtxPlanner::update_lmc(int v) {
    Vertex &vertex = vertices_[static_cast<std::size_t>(v)];
    if (v == root_id_) {
        return;
    }
    double best_lmc = kInf;
    int best_parent = -1;
    for (int u : vertex.neighbors) {
        if (edge_blocked(u, v)) {
            continue;
        }
        const Vertex &other = vertices_[static_cast<std::size_t>(u)];
        // Never route through an own child: its lmc already includes this
        // vertex, so that would double-count (and risks parent cycles while
        // labels are stale mid-cascade).
        if (other.lmc == kInf || other.parent == v) {
            continue;
        }
        const double through = other.lmc + distance(other.position, vertex.position);
        if (through < best_lmc - kCostMargin ||
            (through < best_lmc + kCostMargin && u < best_parent)) {
            best_lmc = through;
            best_parent = u;
        }
    }
    if (best_parent >= 0) {
        vertex.lmc = best_lmc;
        if (vertex.parent != best_parent) {
            set_parent(v, best_parent);
        }
    } else {
        detach_from_parent(v);
        vertex.lmc = kInf;
    }
}

void RrtxPlanner::rewire_neighbours(int v) {
    Vertex &vertex = vertices_[static_cast<std::size_t>(v)];
    if (vertex.lmc == kInf) {
        return;
    }
    for (int u : vertex.neighbors) {
        if (u == vertex.parent || u == root_id_ || edge_blocked(u, v)) {
            continue;
        }
        Vertex &other = vertices_[static_cast<std::size_t>(u)];
        const double through = vertex.lmc + distance(vertex.position, other.position);
        if (through < other.lmc - kCostMargin) {
            other.lmc = through;
            set_parent(u, v);
            if (vertex_inconsistent(other)) {
                queue_push(u);
            }
        }
    }
}

bool RrtxPlanner::process_queue_top() {
    const QueueEntry entry = queue_.top();
    queue_.pop();
    Vertex &vertex = vertices_[static_cast<std::size_t>(entry.id)];
    if (!vertex_inconsistent(vertex) || entry.key != vertex_key(vertex)) {
        return false; // stale: superseded by a later push or already settled
    }
    update_lmc(entry.id);
    rewire_neighbours(entry.id);
    vertex.g = vertex.lmc;
    return true;
}

bool RrtxPlanner::robot_connected() const {
    const Vertex &robot = vertices_[static_cast<std::size_t>(robot_id_)];
    return robot.lmc < kInf && !vertex_inconsistent(robot);
}

NotifyStats RrtxPlanner::notify_changes(const IncrementalView &view) {
    NotifyStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    view_ = &view;
    if (vertices_.empty()) {
        return stats;
    }

    // Re-validate every stored edge against the grown sensed region. The
    // sensed region only grows, so validity can only flip from ok to blocked.
    std::vector<std::pair<int, int>> newly_blocked;
    for (std::size_t u = 0; u < vertices_.size(); ++u) {
        for (int v : vertices_[u].neighbors) {
            if (static_cast<int>(u) >= v || edge_blocked(static_cast<int>(u), v)) {
                continue;
            }
            if (!view.is_motion_valid(vertices_[u].position,
                                      vertices_[static_cast<std::size_t>(v)].position)) {
                blocked_.insert(edge_key(static_cast<int>(u), v));
                newly_blocked.emplace_back(static_cast<int>(u), v);
            }
        }
    }
    stats.graph_edges_blocked = static_cast<int>(newly_blocked.size());

    // Sever tree edges among the blocked ones; the cut child roots an
    // orphaned subtree.
    std::vector<int> orphan_seeds;
    for (const auto &[u, v] : newly_blocked) {
        if (vertices_[static_cast<std::size_t>(u)].parent == v) {
            detach_from_parent(u);
            orphan_seeds.push_back(u);
            ++stats.tree_edges_severed;
        } else if (vertices_[static_cast<std::size_t>(v)].parent == u) {
            detach_from_parent(v);
            orphan_seeds.push_back(v);
            ++stats.tree_edges_severed;
        }
    }

    // Close the orphan set over tree descendants.
    std::vector<char> orphan(vertices_.size(), 0);
    std::vector<int> stack = orphan_seeds;
    for (int seed : orphan_seeds) {
        orphan[static_cast<std::size_t>(seed)] = 1;
    }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int c : vertices_[static_cast<std::size_t>(v)].children) {
            if (!orphan[static_cast<std::size_t>(c)]) {
                orphan[static_cast<std::size_t>(c)] = 1;
                stack.push_back(c);
            }
        }
    }

    // Seed the repair cascade: surviving neighbors of the orphaned region
    // are forced inconsistent so the next plan() call reruns them, then the
    // orphans themselves forget their costs entirely.
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (!orphan[v]) {
            continue;
        }
        for (int u : vertices_[v].neighbors) {
            if (orphan[static_cast<std::size_t>(u)] || u == root_id_ ||
                edge_blocked(static_cast<int>(v), u)) {
                continue;
            }
            Vertex &survivor = vertices_[static_cast<std::size_t>(u)];
            if (survivor.lmc < kInf) {
                survivor.g = kInf;
                queue_push(u);
            }
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (!orphan[v]) {
            continue;
        }
        detach_from_parent(static_cast<int>(v));
        vertices_[v].g = kInf;
        vertices_[v].lmc = kInf;
    }

    stats.detection_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return stats;
}

PlanResult RrtxPlanner::plan(const PlanQuery &query) {
    validate_query(query);
    view_ = query.view;
    RandomStream rng(query.seed);
    BudgetTracker tracker(query.budget);
    PlanResult result;

    if (root_id_ < 0) {
        // First query of the trial: root the tree at the goal.
        root_id_ = static_cast<int>(vertices_.size());
        vertices_.push_back(Vertex{query.goal, 0.0, 0.0, -1, {}, {}});
        index_.insert(query.goal, static_cast<std::uint32_t>(root_id_));
    } else if (!(vertices_[static_cast<std::size_t>(root_id_)].position == query.goal)) {
        throw std::invalid_argument("RRT^X keeps one goal per trial; the goal moved");
    }

    robot_ = query.start;
    const auto at_robot = index_.nearest(robot_);
    if (at_robot && at_robot->position == robot_) {
        robot_id_ = static_cast<int>(at_robot->id);
    } else {
        robot_id_ = insert_vertex(robot_);
    }
    // Keys depend on the robot position, so the queue is re-keyed per query.
    rebuild_queue();

    double best = kInf;
    const auto note_solution = [&]() {
        if (!robot_connected()) {
            return;
        }
        const double cost = vertices_[static_cast<std::size_t>(robot_id_)].lmc;
        if (cost < best - kCostMargin) {
            if (best == kInf) {
                result.seconds_to_initial = tracker.elapsed_seconds();
                result.iterations_to_initial = tracker.used_iterations();
            }
            best = cost;
            result.cost_trace.emplace_back(tracker.used_iterations(), cost);
        }
    };

    bool done = false;
    while (!done && !tracker.expired()) {
        // Drain the inconsistency queue (repair work is charged here).
        while (!queue_.empty() && !tracker.expired()) {
            tracker.tick();
            process_queue_top();
            if (initial_only_ && robot_connected()) {
                break;
            }
        }
        note_solution();
        if (initial_only_ && robot_connected()) {
            done = true;
            break;
        }
        if (tracker.expired()) {
            break;
        }
        // One sampling/extension step.
        tracker.tick();
        const Point2 target = sample_state(rng, *query.view, robot_, params_.goal_bias);
        const auto nearest = index_.nearest(target);
        const Point2 fresh = steer(nearest->position, target, params_.max_edge);
        if (!(fresh == nearest->position) && query.view->is_state_valid(fresh)) {
            insert_vertex(fresh);
        }
    }
    note_solution();

    const Vertex &robot = vertices_[static_cast<std::size_t>(robot_id_)];
    if (robot.lmc < kInf) {
        std::vector<Point2> waypoints;
        int v = robot_id_;
        while (v >= 0) {
            waypoints.push_back(vertices_[static_cast<std::size_t>(v)].position);
            if (v == root_id_) {
                break;
            }
            v = vertices_[static_cast<std::size_t>(v)].parent;
        }
        if (v == root_id_) {
            result.status = PlanStatus::Solved;
            result.path = Path(std::move(waypoints));
            result.cost = result.path.length();
        }
    }
    result.seconds_total = tracker.elapsed_seconds();
    result.iterations_total = tracker.used_iterations();
    return result;
}

RrtxPlanner::VertexView RrtxPlanner::vertex_view(std::size_t id) const {
    const Vertex &v = vertices_.at(id);
    return VertexView{v.position, v.g, v.lmc, v.parent};
}

std::vector<std::pair<int, int>> RrtxPlanner::neighbor_edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < vertices_.size(); ++u) {
        for (int v : vertices_[u].neighbors) {
            if (static_cast<int>(u) < v && !edge_blocked(static_cast<int>(u), v)) {
                out.emplace_back(static_cast<int>(u), v);
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> RrtxPlanner::tree_edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].parent >= 0) {
            out.emplace_back(static_cast<int>(v), vertices_[v].parent);
        }
    }
    return out;
}

std::size_t RrtxPlanner::settle() {
    std::size_t pops = 0;
    while (!queue_.empty()) {
        ++pops;
        process_queue_top();
    }
    return pops;
}

bool RrtxPlanner::inconsistency_queue_empty() const {
    // Stale entries do not count; the queue is logically empty when no
    // vertex is inconsistent.
    for (const Vertex &v : vertices_) {
        if (vertex_inconsistent(v)) {
            return false;
        }
    }
    return true;
}

} // namespace incplan
