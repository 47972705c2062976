#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incplan/geometry.hpp"

namespace incplan {

/// Collision-checking resolution shared by every planner and the replay
/// checker: motions are sampled so consecutive probes are at most this far
/// apart.
inline constexpr double kCollisionResolution = 0.002;

/// Ground-truth planning problem: axis-aligned rectangular obstacles inside
/// a square workspace. Obstacles are closed sets, so touching one collides.
struct GlobalWorld {
    AxisRect bounds{{-1.0, -1.0}, {1.0, 1.0}};
    std::vector<AxisRect> obstacles;
    Point2 start;
    Point2 goal;
};

/// True when p avoids every obstacle and stays inside the bounds.
bool global_state_valid(const GlobalWorld &world, Point2 p);

/// True when the whole segment a->b avoids every obstacle and stays inside
/// the bounds. Exact for segments against closed rectangles.
bool global_motion_valid(const GlobalWorld &world, Point2 a, Point2 b);

/// Union of sensing balls accumulated over a trial. Balls are closed discs
/// of a fixed radius and are never removed.
class SensedRegion {
  public:
    explicit SensedRegion(double sensor_range);

    double sensor_range() const { return sensor_range_; }
    const std::vector<Ball> &balls() const { return balls_; }

    /// Records a sensing event at x, appending one ball.
    void sense(Point2 x);

    /// True when p lies inside at least one sensing ball.
    bool contains(Point2 p) const;

  private:
    double sensor_range_;
    std::vector<Ball> balls_;
};

/// Planner-facing snapshot of the partially sensed world. A state is invalid
/// exactly when it is out of bounds, or inside a global obstacle *and* inside
/// the sensed region; unsensed space is assumed free.
class IncrementalView {
  public:
    IncrementalView(const GlobalWorld &world, const SensedRegion &region,
                    double resolution = kCollisionResolution);

    const AxisRect &bounds() const { return world_->bounds; }
    double resolution() const { return resolution_; }
    const GlobalWorld &world() const { return *world_; }
    const SensedRegion &region() const { return *region_; }

    bool is_state_valid(Point2 p) const;

    /// Exact segment test against the sensed portion of every obstacle: the
    /// motion is invalid iff some point of it lies inside an obstacle and
    /// inside a sensing ball. Equivalent to sampling at infinitesimal
    /// resolution, so it can only be stricter than a sampled check.
    bool is_motion_valid(Point2 a, Point2 b) const;

  private:
    const GlobalWorld *world_;
    const SensedRegion *region_;
    double resolution_;
    // Balls that overlap each obstacle, precomputed once per snapshot.
    std::vector<std::vector<std::uint32_t>> balls_near_obstacle_;

    bool segment_blocked_by(std::size_t obstacle_index, Point2 a, Point2 b) const;
};

/// Largest s in [0, 1] such that every point of path([0, s]) lies inside the
/// sensed region. The path must start inside the region; throws
/// std::invalid_argument otherwise. Exact for piecewise-linear paths.
double exit_parameter(const Path &path, const SensedRegion &region);

/// True when a start-goal path exists in the fully known world (decided with
/// the visibility-graph oracle).
bool world_is_feasible(const GlobalWorld &world);

/// Empty benchmark world: no obstacles, start (-0.1, -0.1), goal (0.4, 0.4).
GlobalWorld make_empty_world();

/// Wall-gap benchmark world: two wall segments leaving a 0.05-tall opening
/// on the y axis, start (-0.4, 0), goal (0.4, 0).
GlobalWorld make_wall_gap_world();

/// Double-enclosure benchmark world: start and goal each boxed inside a
/// C-shaped enclosure whose opening faces away from the other endpoint.
GlobalWorld make_double_enclosure_world();

/// Random-rectangles benchmark world: 20 axis-aligned rectangles with side
/// lengths U[0.1, 0.2], redrawn so none covers start or goal and the problem
/// stays feasible. Throws std::runtime_error when 1000 redraws fail.
GlobalWorld generate_random_rectangles_world(std::uint64_t seed);

/// Named lookup for the fixed worlds above ("empty", "wall_gap",
/// "double_enclosure"); throws std::invalid_argument for unknown names.
GlobalWorld make_named_world(const std::string &name);

} // namespace incplan
