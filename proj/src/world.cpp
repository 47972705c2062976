#include "incplan/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "incplan/oracle.hpp"
#include "incplan/random.hpp"

namespace incplan {

bool global_state_valid(const GlobalWorld &world, Point2 p) {
    if (!world.bounds.contains(p)) {
        return false;
    }
    for (const AxisRect &obstacle : world.obstacles) {
        if (obstacle.contains(p)) {
            return false;
        }
    }
    return true;
}

bool global_motion_valid(const GlobalWorld &world, Point2 a, Point2 b) {
    // The bounds are convex, so the segment stays inside iff its endpoints do.
    if (!world.bounds.contains(a) || !world.bounds.contains(b)) {
        return false;
    }
    for (const AxisRect &obstacle : world.obstacles) {
        if (segment_intersects_rect(a, b, obstacle)) {
            return false;
        }
    }
    return true;
}

SensedRegion::SensedRegion(double sensor_range) : sensor_range_(sensor_range) {
    if (!(sensor_range > 0.0)) {
        throw std::invalid_argument("sensor range must be positive");
    }
}

void SensedRegion::sense(Point2 x) { balls_.push_back(Ball{x, sensor_range_}); }

bool SensedRegion::contains(Point2 p) const {
    for (const Ball &ball : balls_) {
        if (ball.contains(p)) {
            return true;
        }
    }
    return false;
}

namespace {

// Closed disc vs closed rectangle overlap: compare the radius against the
// distance from the center to the nearest rectangle point.
bool ball_touches_rect(const Ball &ball, const AxisRect &rect) {
    const double cx = std::clamp(ball.center.x, rect.min.x, rect.max.x);
    const double cy = std::clamp(ball.center.y, rect.min.y, rect.max.y);
    return squared_distance(ball.center, {cx, cy}) <= ball.radius * ball.radius;
}

} // namespace

IncrementalView::IncrementalView(const GlobalWorld &world, const SensedRegion &region,
                                 double resolution)
    : world_(&world), region_(&region), resolution_(resolution) {
    if (!(resolution > 0.0)) {
        throw std::invalid_argument("resolution must be positive");
    }
    balls_near_obstacle_.resize(world.obstacles.size());
    const auto &balls = region.balls();
    for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
        for (std::uint32_t j = 0; j < balls.size(); ++j) {
            if (ball_touches_rect(balls[j], world.obstacles[i])) {
                balls_near_obstacle_[i].push_back(j);
            }
        }
    }
}

bool IncrementalView::is_state_valid(Point2 p) const {
    if (!world_->bounds.contains(p)) {
        return false;
    }
    const auto &balls = region_->balls();
    for (std::size_t i = 0; i < world_->obstacles.size(); ++i) {
        if (!world_->obstacles[i].contains(p)) {
            continue;
        }
        // Only balls overlapping this obstacle can witness the collision.
        for (std::uint32_t j : balls_near_obstacle_[i]) {
            if (balls[j].contains(p)) {
                return false;
            }
        }
    }
    return true;
}

bool IncrementalView::segment_blocked_by(std::size_t obstacle_index, Point2 a, Point2 b) const {
    const auto inside = clip_segment_to_rect(a, b, world_->obstacles[obstacle_index]);
    if (!inside) {
        return false;
    }
    const auto &balls = region_->balls();
    for (std::uint32_t j : balls_near_obstacle_[obstacle_index]) {
        const auto sensed = clip_segment_to_ball(a, b, balls[j]);
        if (sensed && sensed->lo <= inside->hi && inside->lo <= sensed->hi) {
            return true;
        }
    }
    return false;
}

bool IncrementalView::is_motion_valid(Point2 a, Point2 b) const {
    if (!world_->bounds.contains(a) || !world_->bounds.contains(b)) {
        return false;
    }
    for (std::size_t i = 0; i < world_->obstacles.size(); ++i) {
        if (segment_blocked_by(i, a, b)) {
            return false;
        }
    }
    return true;
}

namespace {

// Largest t in [0, 1] with segment([0, t]) covered by the balls, assuming
// t = 0 is covered. The coverage set is a finite union of closed intervals,
// so the supremum is attained.
double covered_prefix(Point2 a, Point2 b, const std::vector<Ball> &balls) {
    std::vector<ParamInterval> intervals;
    for (const Ball &ball : balls) {
        if (const auto hit = clip_segment_to_ball(a, b, ball)) {
            intervals.push_back(*hit);
        }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const ParamInterval &lhs, const ParamInterval &rhs) { return lhs.lo < rhs.lo; });
    double covered = 0.0;
    for (const ParamInterval &iv : intervals) {
        if (iv.lo > covered) {
            break; // gap: (covered, iv.lo) is unsensed
        }
        covered = std::max(covered, iv.hi);
        if (covered >= 1.0) {
            return 1.0;
        }
    }
    return covered;
}

} // namespace

double exit_parameter(const Path &path, const SensedRegion &region) {
    if (path.empty()) {
        throw std::invalid_argument("exit_parameter on empty path");
    }
    if (!region.contains(path.front())) {
        throw std::invalid_argument("path does not start inside the sensed region");
    }
    const double total = path.length();
    if (total == 0.0) {
        return 1.0;
    }
    const auto &pts = path.waypoints();
    const auto &cum = path.cumulative_lengths();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double t = covered_prefix(pts[i], pts[i + 1], region.balls());
        if (t < 1.0) {
            return std::min((cum[i] + t * (cum[i + 1] - cum[i])) / total, 1.0);
        }
    }
    return 1.0;
}

bool world_is_feasible(const GlobalWorld &world) {
    return oracle_shortest_path(world, world.start, world.goal).feasible;
}

GlobalWorld make_empty_world() {
    GlobalWorld world;
    world.start = {-0.1, -0.1};
    world.goal = {0.4, 0.4};
    return world;
}

GlobalWorld make_wall_gap_world() {
    GlobalWorld world;
    world.obstacles.push_back({{-0.05, -1.0}, {0.05, -0.025}});
    world.obstacles.push_back({{-0.05, 0.025}, {0.05, 1.0}});
    world.start = {-0.4, 0.0};
    world.goal = {0.4, 0.0};
    return world;
}

GlobalWorld make_double_enclosure_world() {
    GlobalWorld world;
    world.start = {-0.5, 0.0};
    world.goal = {0.5, 0.0};
    // Start enclosure: 0.3 x 0.3 cavity, 0.05-thick walls, opening facing
    // the left boundary (away from the goal).
    world.obstacles.push_back({{-0.65, 0.15}, {-0.30, 0.20}});   // top
    world.obstacles.push_back({{-0.65, -0.20}, {-0.30, -0.15}}); // bottom
    world.obstacles.push_back({{-0.35, -0.15}, {-0.30, 0.15}});  // inner side
    // Goal enclosure mirrored about x = 0, opening facing the right boundary.
    world.obstacles.push_back({{0.30, 0.15}, {0.65, 0.20}});     // top
    world.obstacles.push_back({{0.30, -0.20}, {0.65, -0.15}});   // bottom
    world.obstacles.push_back({{0.30, -0.15}, {0.35, 0.15}});    // inner side
    return world;
}

GlobalWorld generate_random_rectangles_world(std::uint64_t seed) {
    constexpr int kNumRectangles = 20;
    constexpr int kMaxWorldRedraws = 1000;
    RandomStream rng(seed);
    GlobalWorld world;
    world.start = {-0.1, -0.1};
    world.goal = {0.4, 0.4};
    for (int attempt = 0; attempt < kMaxWorldRedraws; ++attempt) {
        world.obstacles.clear();
        for (int i = 0; i < kNumRectangles; ++i) {
            // Draw order is pinned for reproducibility: center x, center y,
            // width, height. A rectangle covering the start or goal state is
            // redrawn; a redraw consumes fresh values for all four.
            AxisRect rect;
            do {
                const Point2 center = rng.uniform_in_rect(world.bounds);
                const double w = rng.uniform(0.1, 0.2);
                const double h = rng.uniform(0.1, 0.2);
                rect = AxisRect{{center.x - w / 2.0, center.y - h / 2.0},
                                {center.x + w / 2.0, center.y + h / 2.0}};
            } while (rect.contains(world.start) || rect.contains(world.goal));
            world.obstacles.push_back(rect);
        }
        if (world_is_feasible(world)) {
            return world;
        }
    }
    throw std::runtime_error("random rectangles: no feasible world after 1000 redraws");
}

GlobalWorld make_named_world(const std::string &name) {
    if (name == "empty") {
        return make_empty_world();
    }
    if (name == "wall_gap") {
        return make_wall_gap_world();
    }
    if (name == "double_enclosure") {
        return make_double_enclosure_world();
    }
    throw std::invalid_argument("unknown world name: " + name);
}

} // namespace incplan
