#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace incplan {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

Point2 operator+(Point2 a, Point2 b);
Point2 operator-(Point2 a, Point2 b);
Point2 operator*(double s, Point2 p);

double dot(Point2 a, Point2 b);
double norm(Point2 p);
double distance(Point2 a, Point2 b);
double squared_distance(Point2 a, Point2 b);

/// Linear interpolation between a and b; t in [0, 1] maps to [a, b].
Point2 lerp(Point2 a, Point2 b, double t);

/// Axis-aligned rectangle, treated as a closed set: boundary points are inside.
struct AxisRect {
    Point2 min;
    Point2 max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    bool contains(Point2 p) const;
};

/// Closed disc: boundary points are inside.
struct Ball {
    Point2 center;
    double radius = 0.0;

    bool contains(Point2 p) const;
};

bool point_in_rect(Point2 p, const AxisRect &r);
bool point_in_ball(Point2 p, const Ball &b);

/// Closed parameter interval [lo, hi] along a segment, with 0 <= lo <= hi <= 1.
struct ParamInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Parameter interval of segment a->b that lies inside the closed rectangle,
/// or nullopt when the segment misses it. Tangent contact counts as overlap.
std::optional<ParamInterval> clip_segment_to_rect(Point2 a, Point2 b, const AxisRect &r);

/// Parameter interval of segment a->b inside the closed ball, or nullopt.
std::optional<ParamInterval> clip_segment_to_ball(Point2 a, Point2 b, const Ball &ball);

/// True when segment a->b touches the closed rectangle anywhere.
bool segment_intersects_rect(Point2 a, Point2 b, const AxisRect &r);

/// Piecewise-linear path through one or more waypoints, parameterized by
/// normalized arc length s in [0, 1]. Exact consecutive duplicates are
/// dropped on construction so the parameterization stays well defined.
class Path {
  public:
    Path() = default;
    explicit Path(std::vector<Point2> waypoints);

    bool empty() const { return waypoints_.empty(); }
    std::size_t size() const { return waypoints_.size(); }
    const std::vector<Point2> &waypoints() const { return waypoints_; }
    Point2 front() const { return waypoints_.front(); }
    Point2 back() const { return waypoints_.back(); }

    /// Total arc length; 0 for single-point paths.
    double length() const { return length_; }

    /// Cumulative arc length up to each waypoint (same size as waypoints).
    const std::vector<double> &cumulative_lengths() const { return cumulative_; }

    /// Point at normalized arc length s in [0, 1]; throws std::out_of_range
    /// otherwise. A zero-length path returns its single waypoint.
    Point2 interpolate(double s) const;

    /// Subpath covering normalized arc length [0, s].
    Path prefix(double s) const;

    /// Subpath covering normalized arc length [s, 1].
    Path suffix(double s) const;

    /// Appends another path whose first waypoint must coincide with this
    /// path's last waypoint to within tol; throws std::invalid_argument when
    /// the endpoints do not line up.
    void append(const Path &tail, double tol = 1e-9);

  private:
    std::vector<Point2> waypoints_;
    std::vector<double> cumulative_;
    double length_ = 0.0;

    void rebuild_cumulative();
};

} // namespace incplan
