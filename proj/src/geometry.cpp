#include "incplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace incplan {

Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm(Point2 p) { return std::hypot(p.x, p.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }

double squared_distance(Point2 a, Point2 b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

Point2 lerp(Point2 a, Point2 b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

bool AxisRect::contains(Point2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
}

bool Ball::contains(Point2 p) const {
    return squared_distance(p, center) <= radius * radius;
}

bool point_in_rect(Point2 p, const AxisRect &r) { return r.contains(p); }
bool point_in_ball(Point2 p, const Ball &b) { return b.contains(p); }

namespace {

// Narrows [lo, hi] to the parameters where a + t*d stays inside [min, max]
// along one axis. Returns false when the slab is missed entirely.
bool clip_axis(double a, double d, double min, double max, double &lo, double &hi) {
    if (d == 0.0) {
        return a >= min && a <= max;
    }
    double t0 = (min - a) / d;
    double t1 = (max - a) / d;
    if (t0 > t1) {
        std::swap(t0, t1);
    }
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return lo <= hi;
}

} // namespace

std::optional<ParamInterval> clip_segment_to_rect(Point2 a, Point2 b, const AxisRect &r) {
    const Point2 d = b - a;
    double lo = 0.0;
    double hi = 1.0;
    if (!clip_axis(a.x, d.x, r.min.x, r.max.x, lo, hi) ||
        !clip_axis(a.y, d.y, r.min.y, r.max.y, lo, hi)) {
        return std::nullopt;
    }
    return ParamInterval{lo, hi};
}

std::optional<ParamInterval> clip_segment_to_ball(Point2 a, Point2 b, const Ball &ball) {
    const Point2 d = b - a;
    const Point2 f = a - ball.center;
    const double qa = dot(d, d);
    const double qc = dot(f, f) - ball.radius * ball.radius;
    if (qa == 0.0) {
        // Degenerate segment: either the point is covered or nothing is.
        if (qc <= 0.0) {
            return ParamInterval{0.0, 1.0};
        }
        return std::nullopt;
    }
    const double qb = dot(f, d);
    const double disc = qb * qb - qa * qc;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double sq = std::sqrt(disc);
    const double lo = std::max((-qb - sq) / qa, 0.0);
    const double hi = std::min((-qb + sq) / qa, 1.0);
    if (lo > hi) {
        return std::nullopt;
    }
    return ParamInterval{lo, hi};
}

bool segment_intersects_rect(Point2 a, Point2 b, const AxisRect &r) {
    return clip_segment_to_rect(a, b, r).has_value();
}

Path::Path(std::vector<Point2> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.empty()) {
        throw std::invalid_argument("Path requires at least one waypoint");
    }
    auto last = std::unique(waypoints_.begin(), waypoints_.end());
    waypoints_.erase(last, waypoints_.end());
    rebuild_cumulative();
}

void Path::rebuild_cumulative() {
    cumulative_.resize(waypoints_.size());
    double total = 0.0;
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < waypoints_.size(); ++i) {
        total += distance(waypoints_[i - 1], waypoints_[i]);
        cumulative_[i] = total;
    }
    length_ = total;
}

Point2 Path::interpolate(double s) const {
    if (waypoints_.empty()) {
        throw std::logic_error("interpolate on empty path");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::out_of_range("path parameter outside [0, 1]");
    }
    if (length_ == 0.0) {
        return waypoints_.front();
    }
    const double target = s * length_;
    // First waypoint with cumulative length >= target.
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
    const std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i == 0) {
        return waypoints_.front();
    }
    const double seg = cumulative_[i] - cumulative_[i - 1];
    const double t = (target - cumulative_[i - 1]) / seg;
    return lerp(waypoints_[i - 1], waypoints_[i], t);
}

Path Path::prefix(double s) const {
    if (waypoints_.empty()) {
        throw std::logic_error("prefix on empty path");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::out_of_range("path parameter outside [0, 1]");
    }
    const double target = s * length_;
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
        if (cumulative_[i] >= target) {
            break;
        }
        pts.push_back(waypoints_[i]);
    }
    pts.push_back(interpolate(s));
    return Path(std::move(pts));
}

Path Path::suffix(double s) const {
    if (waypoints_.empty()) {
        throw std::logic_error("suffix on empty path");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::out_of_range("path parameter outside [0, 1]");
    }
    const double target = s * length_;
    std::vector<Point2> pts;
    pts.push_back(interpolate(s));
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
        if (cumulative_[i] > target) {
            pts.push_back(waypoints_[i]);
        }
    }
    return Path(std::move(pts));
}

void Path::append(const Path &tail, double tol) {
    if (tail.empty()) {
        return;
    }
    if (waypoints_.empty()) {
        *this = tail;
        return;
    }
    if (distance(waypoints_.back(), tail.front()) > tol) {
        throw std::invalid_argument("appended path does not start where this one ends");
    }
    // Keep our endpoint as the junction; the tail's first point is its twin.
    for (std::size_t i = 1; i < tail.size(); ++i) {
        if (!(tail.waypoints_[i] == waypoints_.back())) {
            waypoints_.push_back(tail.waypoints_[i]);
        }
    }
    rebuild_cumulative();
}

} // namespace incplan
