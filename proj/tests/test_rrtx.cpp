// RRT^X: goal-rooted persistent graph, free change notification, and the
// queue-driven repair cascade. The notification tests compare the planner's
// edge bookkeeping against brute-force re-validation of every stored edge,
// and the quiescence tests check the epsilon = 0 contract (g = lmc
// everywhere once the cascade settles).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "incplan/budget.hpp"
#include "incplan/oracle.hpp"
#include "incplan/planner.hpp"
#include "incplan/rrtx.hpp"
#include "incplan/world.hpp"

using namespace incplan;

namespace {

PlanQuery make_query(const IncrementalView &view, Point2 start, Point2 goal,
                     std::uint64_t iterations, std::uint64_t seed) {
    PlanQuery q;
    q.start = start;
    q.goal = goal;
    q.view = &view;
    q.budget = Budget::iterations(iterations);
    q.seed = seed;
    return q;
}

// A view that has sensed the entire workspace (one ball covers the bounds).
struct FullySensed {
    SensedRegion region{3.0};
    const GlobalWorld *world;
    IncrementalView view;

    explicit FullySensed(const GlobalWorld &w)
        : world(&w), view((region.sense({0.0, 0.0}), w), region) {}
};

bool path_valid_in_view(const IncrementalView &view, const Path &path) {
    const auto &w = path.waypoints();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!view.is_motion_valid(w[i], w[i + 1])) {
            return false;
        }
    }
    return true;
}

std::set<std::pair<int, int>> edge_set(const std::vector<std::pair<int, int>> &edges) {
    return {edges.begin(), edges.end()};
}

} // namespace

TEST_CASE("rrtx solves a fully sensed wall gap and charges the whole budget in full mode") {
    const GlobalWorld world = make_wall_gap_world();
    FullySensed sensed(world);

    RrtxPlanner planner({}, /*initial_only=*/false);
    const auto result =
        planner.plan(make_query(sensed.view, world.start, world.goal, 20000, 4242));

    REQUIRE(result.solved());
    CHECK(result.iterations_total == 20000); // full mode never stops early
    CHECK(result.path.waypoints().front() == world.start);
    CHECK(result.path.waypoints().back() == world.goal);
    CHECK(path_valid_in_view(sensed.view, result.path));
    CHECK(result.cost == doctest::Approx(result.path.length()).epsilon(1e-12));
    // The gap forces at least the straight-through-the-gap length.
    CHECK(result.cost >= 0.8 - 1e-9);
    CHECK_FALSE(result.early_exit);

    // Anytime trace: nonincreasing, ends at the reported cost.
    REQUIRE(!result.cost_trace.empty());
    for (std::size_t i = 1; i < result.cost_trace.size(); ++i) {
        CHECK(result.cost_trace[i].second <= result.cost_trace[i - 1].second + 1e-12);
    }
    CHECK(result.cost_trace.back().second == doctest::Approx(result.cost).epsilon(1e-12));
}

TEST_CASE("rrtx initial-only stops at its first solution") {
    const GlobalWorld world = make_empty_world();
    FullySensed sensed(world);

    RrtxPlanner planner({}, /*initial_only=*/true);
    const auto result =
        planner.plan(make_query(sensed.view, world.start, world.goal, 100000, 7));

    REQUIRE(result.solved());
    CHECK(result.iterations_total < 100000);
    CHECK(result.iterations_total == result.iterations_to_initial);
    CHECK(path_valid_in_view(sensed.view, result.path));
}

TEST_CASE("rrtx cost is never below the visibility-graph oracle on a static view") {
    // Spec invariant: with full knowledge the returned cost can approach but
    // never beat the oracle (up to the oracle's own corner offset).
    const std::uint64_t seeds[] = {11, 23, 42};
    for (const std::uint64_t seed : seeds) {
        const GlobalWorld world = generate_random_rectangles_world(seed);
        FullySensed sensed(world);
        const auto oracle = oracle_shortest_path(world, world.start, world.goal);
        REQUIRE(oracle.feasible);

        RrtxPlanner planner({}, false);
        const auto result =
            planner.plan(make_query(sensed.view, world.start, world.goal, 25000, seed * 3 + 1));
        if (result.solved()) {
            CHECK(result.cost >= oracle.length - 1e-4);
            CHECK(path_valid_in_view(sensed.view, result.path));
        }
    }

    // Empty world: must solve, and converge close to the straight line.
    const GlobalWorld empty = make_empty_world();
    FullySensed sensed(empty);
    RrtxPlanner planner({}, false);
    const auto result = planner.plan(make_query(sensed.view, empty.start, empty.goal, 30000, 5));
    REQUIRE(result.solved());
    const double direct = distance(empty.start, empty.goal);
    CHECK(result.cost >= direct - 1e-9);
    CHECK(result.cost <= 1.05 * direct);
}

TEST_CASE("rrtx settles to quiescence with consistent labels") {
    const GlobalWorld world = generate_random_rectangles_world(6);
    FullySensed sensed(world);

    RrtxPlanner planner({}, false);
    planner.plan(make_query(sensed.view, world.start, world.goal, 8000, 99));
    planner.settle();

    CHECK(planner.inconsistency_queue_empty());
    std::size_t finite = 0;
    for (std::size_t id = 0; id < planner.vertex_count(); ++id) {
        const auto v = planner.vertex_view(id);
        if (std::isinf(v.g) && std::isinf(v.lmc)) {
            continue; // unreachable/orphaned vertices sit at infinity
        }
        CHECK(v.g == v.lmc);
        ++finite;
    }
    CHECK(finite > 0);

    // Tree labels telescope: child lmc = parent lmc + edge length.
    for (const auto &[child, parent] : planner.tree_edges()) {
        const auto c = planner.vertex_view(static_cast<std::size_t>(child));
        const auto p = planner.vertex_view(static_cast<std::size_t>(parent));
        REQUIRE(std::isfinite(c.lmc));
        REQUIRE(std::isfinite(p.lmc));
        CHECK(c.lmc ==
              doctest::Approx(p.lmc + distance(c.position, p.position)).epsilon(1e-9));
    }

    // Edges respect the planner's cap.
    for (const auto &[u, v] : planner.neighbor_edges()) {
        const auto a = planner.vertex_view(static_cast<std::size_t>(u));
        const auto b = planner.vertex_view(static_cast<std::size_t>(v));
        CHECK(distance(a.position, b.position) <= 0.3 + 1e-9);
    }
}

TEST_CASE("rrtx notify_changes blocks exactly the brute-force edge set") {
    // One vertical wall in the middle; the first view has not sensed it yet.
    GlobalWorld world;
    world.obstacles.push_back({{-0.05, -0.3}, {0.05, 0.3}});
    world.start = {-0.5, 0.0};
    world.goal = {0.5, 0.0};

    SensedRegion region(0.15);
    region.sense(world.start); // far from the wall: believed empty
    IncrementalView blind(world, region);
    REQUIRE(blind.is_motion_valid(world.start, world.goal));

    RrtxPlanner planner({}, false);
    const auto first = planner.plan(make_query(blind, world.start, world.goal, 12000, 314));
    REQUIRE(first.solved());
    CHECK(path_valid_in_view(blind, first.path));

    // The robot advances and senses near the wall; part of it becomes known.
    region.sense({-0.1, 0.0});
    IncrementalView informed(world, region);
    REQUIRE_FALSE(informed.is_motion_valid(world.start, world.goal));

    const auto before_edges = planner.neighbor_edges();
    const auto before_tree = planner.tree_edges();

    // Independent prediction: exactly the previously valid edges that the
    // new view rejects must be blocked, nothing else.
    std::set<std::pair<int, int>> expected_blocked;
    for (const auto &[u, v] : before_edges) {
        const auto a = planner.vertex_view(static_cast<std::size_t>(u));
        const auto b = planner.vertex_view(static_cast<std::size_t>(v));
        if (!informed.is_motion_valid(a.position, b.position)) {
            expected_blocked.insert({u, v});
        }
    }
    int expected_severed = 0;
    for (const auto &[child, parent] : before_tree) {
        const auto key = std::minmax(child, parent);
        if (expected_blocked.count({key.first, key.second}) != 0) {
            ++expected_severed;
        }
    }

    const auto stats = planner.notify_changes(informed);
    CHECK(stats.graph_edges_blocked == static_cast<int>(expected_blocked.size()));
    CHECK(stats.tree_edges_severed == expected_severed);
    CHECK(stats.graph_edges_blocked > 0); // the scenario must actually bite
    CHECK(stats.detection_seconds >= 0.0);

    // Surviving edge set = previous set minus exactly the predicted ones.
    std::set<std::pair<int, int>> expected_after;
    for (const auto &e : before_edges) {
        if (expected_blocked.count(e) == 0) {
            expected_after.insert(e);
        }
    }
    CHECK(edge_set(planner.neighbor_edges()) == expected_after);

    // No tree edge may survive invalidated, even before the cascade runs.
    for (const auto &[child, parent] : planner.tree_edges()) {
        const auto c = planner.vertex_view(static_cast<std::size_t>(child));
        const auto p = planner.vertex_view(static_cast<std::size_t>(parent));
        CHECK(informed.is_motion_valid(c.position, p.position));
    }

    // After the cascade settles, labels are consistent again.
    planner.settle();
    CHECK(planner.inconsistency_queue_empty());
    for (const auto &[child, parent] : planner.tree_edges()) {
        const auto c = planner.vertex_view(static_cast<std::size_t>(child));
        const auto p = planner.vertex_view(static_cast<std::size_t>(parent));
        CHECK(c.lmc ==
              doctest::Approx(p.lmc + distance(c.position, p.position)).epsilon(1e-9));
    }

    // Second query from the advanced robot position: the repaired graph must
    // produce a detour that the informed view accepts. (No visibility-graph
    // lower bound applies here: the believed-free boundary is a sensing-ball
    // arc, which corner-based visibility paths can only overestimate.)
    const Point2 robot{-0.2, 0.0};
    REQUIRE(informed.is_state_valid(robot));
    const std::size_t vertices_before = planner.vertex_count();
    const auto second = planner.plan(make_query(informed, robot, world.goal, 20000, 2718));
    REQUIRE(second.solved());
    CHECK(planner.vertex_count() > vertices_before);
    CHECK(path_valid_in_view(informed, second.path));
    CHECK(second.path.waypoints().front() == robot);
    CHECK(second.path.waypoints().back() == world.goal);
    CHECK(second.cost > distance(robot, world.goal) + 1e-6); // forced detour
}

TEST_CASE("rrtx notify_changes with an unchanged view is a no-op") {
    const GlobalWorld world = make_wall_gap_world();
    FullySensed sensed(world);

    RrtxPlanner planner({}, false);
    planner.plan(make_query(sensed.view, world.start, world.goal, 6000, 12));

    const auto before_edges = edge_set(planner.neighbor_edges());
    const auto before_tree = edge_set(planner.tree_edges());
    const auto stats = planner.notify_changes(sensed.view);

    CHECK(stats.graph_edges_blocked == 0);
    CHECK(stats.tree_edges_severed == 0);
    CHECK(edge_set(planner.neighbor_edges()) == before_edges);
    CHECK(edge_set(planner.tree_edges()) == before_tree);
}

TEST_CASE("rrtx keeps one goal per trial") {
    const GlobalWorld world = make_empty_world();
    FullySensed sensed(world);

    RrtxPlanner planner({}, false);
    planner.plan(make_query(sensed.view, world.start, world.goal, 500, 1));
    CHECK_THROWS_AS(
        planner.plan(make_query(sensed.view, world.start, {0.0, 0.9}, 500, 1)),
        std::invalid_argument);
}

TEST_CASE("rrtx is deterministic for a fixed seed") {
    const GlobalWorld world = generate_random_rectangles_world(17);
    FullySensed sensed(world);

    PlanResult results[2];
    for (auto &result : results) {
        RrtxPlanner planner({}, false);
        result = planner.plan(make_query(sensed.view, world.start, world.goal, 9000, 555));
    }
    REQUIRE(results[0].solved() == results[1].solved());
    CHECK(results[0].cost == results[1].cost);
    REQUIRE(results[0].path.waypoints().size() == results[1].path.waypoints().size());
    for (std::size_t i = 0; i < results[0].path.waypoints().size(); ++i) {
        CHECK(results[0].path.waypoints()[i] == results[1].path.waypoints()[i]);
    }
}
