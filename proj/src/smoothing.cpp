#include "incplan/smoothing.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace incplan {

Path shortcut_smooth(const Path &path, const IncrementalView &view, RandomStream &rng,
                     BudgetTracker &tracker) {
    Path current = path;
    if (current.size() < 2) {
        return current;
    }
    while (!tracker.expired()) {
        tracker.tick();
        double s1 = rng.uniform01();
        double s2 = rng.uniform01();
        if (s1 > s2) {
            std::swap(s1, s2);
        }
        if (s2 - s1 < 1e-12) {
            continue;
        }
        const Point2 a = current.interpolate(s1);
        const Point2 b = current.interpolate(s2);
        if (!view.is_motion_valid(a, b)) {
            continue;
        }
        const Path head = current.prefix(s1);
        const Path tail = current.suffix(s2);
        std::vector<Point2> pts = head.waypoints();
        pts.insert(pts.end(), tail.waypoints().begin(), tail.waypoints().end());
        Path candidate(std::move(pts));
        // The straight segment cannot be longer than the stretch it replaces,
        // but guard against rounding so length is truly non-increasing.
        if (candidate.length() <= current.length()) {
            current = std::move(candidate);
        }
    }
    return current;
}

} // namespace incplan
