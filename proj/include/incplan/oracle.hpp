#pragma once

#include "incplan/geometry.hpp"
#include "incplan/world.hpp"

namespace incplan {

struct OracleResult {
    bool feasible = false;
    Path path;                 // shortest a->b path when feasible
    double length = 0.0;       // its length; meaningless when infeasible
};

/// Shortest-path oracle for axis-aligned rectangle worlds: builds the
/// visibility graph over the endpoints and obstacle corners (corners pushed
/// outward by a small epsilon so grazing an obstacle's closed boundary does
/// not collide) and runs Dijkstra. Exact up to the corner offset, which
/// overestimates the true optimum by less than 1e-4 in these worlds.
OracleResult oracle_shortest_path(const GlobalWorld &world, Point2 a, Point2 b);

/// Same oracle restricted to an incremental view: visibility edges are
/// validated with the view's exact motion test, so the result is the
/// shortest path through the *currently believed* free space.
OracleResult oracle_shortest_path_in_view(const IncrementalView &view, Point2 a, Point2 b);

} // namespace incplan
