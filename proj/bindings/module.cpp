// Python bindings for the core planning operations: worlds, single planner
// queries on a fully sensed view, whole incremental trials, and the
// shortest-path oracle.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incplan/oracle.hpp"
#include "incplan/planner.hpp"
#include "incplan/trial.hpp"
#include "incplan/world.hpp"
#include "incplan/world_io.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace incplan;

namespace {

PlannerKind planner_kind_from_id(const std::string &id) {
    const auto kind = parse_planner_id(id);
    if (!kind) {
        throw py::value_error("unknown planner id: " + id);
    }
    return *kind;
}

// A sensed region that covers the whole workspace, for fully-observed
// planning queries.
SensedRegion full_coverage(const GlobalWorld &world) {
    const double rx = world.bounds.max.x - world.bounds.min.x;
    const double ry = world.bounds.max.y - world.bounds.min.y;
    SensedRegion region(rx + ry);
    region.sense(lerp(world.bounds.min, world.bounds.max, 0.5));
    return region;
}

std::vector<std::pair<double, double>> path_points(const Path &path) {
    std::vector<std::pair<double, double>> out;
    for (Point2 p : path.waypoints()) {
        out.emplace_back(p.x, p.y);
    }
    return out;
}

py::dict plan_fully_sensed(const GlobalWorld &world, const std::string &planner,
                           std::uint64_t budget_iterations, std::uint64_t seed) {
    const SensedRegion region = full_coverage(world);
    const IncrementalView view(world, region);
    PlanQuery query;
    query.start = world.start;
    query.goal = world.goal;
    query.view = &view;
    query.budget = Budget::iterations(budget_iterations);
    query.seed = seed;
    const PlanResult result = plan(planner_kind_from_id(planner), query);
    py::dict out;
    out["solved"] = result.solved();
    out["cost"] = result.cost;
    out["iterations"] = result.iterations_total;
    out["early_exit"] = result.early_exit;
    out["path"] = path_points(result.path);
    return out;
}

py::dict run_incremental_trial(const GlobalWorld &world, const std::string &planner,
                               double sensor_range, std::uint64_t budget_iterations,
                               std::uint64_t seed, int max_queries) {
    TrialSetup setup;
    setup.world = world;
    setup.planner = planner_kind_from_id(planner);
    setup.sensor_range = sensor_range;
    setup.budget = Budget::iterations(budget_iterations);
    setup.seed = seed;
    setup.max_queries = max_queries;
    const TrialOutcome outcome = run_trial(setup);
    py::dict out;
    out["success"] = outcome.success;
    out["failure_reason"] = outcome.failure_reason;
    out["queries"] = outcome.query_count;
    out["length"] = outcome.global_length;
    out["iterations"] = outcome.global_iterations;
    out["path"] = path_points(outcome.global_path);
    out["replay_ok"] = outcome.success && replay_path_valid(world, outcome.global_path);
    return out;
}

py::dict oracle_path(const GlobalWorld &world) {
    const OracleResult result = oracle_shortest_path(world, world.start, world.goal);
    py::dict out;
    out["feasible"] = result.feasible;
    out["length"] = result.length;
    out["path"] = path_points(result.path);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Incremental planning with independent per-query planner calls";

    py::class_<GlobalWorld>(m, "World")
        .def_static("named", &make_named_world, py::arg("name"),
                    "empty | wall_gap | double_enclosure")
        .def_static("random_rectangles", &generate_random_rectangles_world, py::arg("seed"))
        .def_static("from_json", &world_from_json, py::arg("json_text"))
        .def("to_json", &world_to_json)
        .def_property_readonly(
            "start", [](const GlobalWorld &w) { return std::make_pair(w.start.x, w.start.y); })
        .def_property_readonly(
            "goal", [](const GlobalWorld &w) { return std::make_pair(w.goal.x, w.goal.y); })
        .def_property_readonly(
            "obstacle_count", [](const GlobalWorld &w) { return w.obstacles.size(); })
        .def("__repr__", [](const GlobalWorld &w) {
            return "<World with " + std::to_string(w.obstacles.size()) + " obstacles>";
        });

    m.def("planner_ids", []() {
        std::vector<std::string> ids;
        for (PlannerKind kind : all_planner_kinds()) {
            ids.push_back(planner_id(kind));
        }
        return ids;
    });
    m.def("plan_fully_sensed", &plan_fully_sensed, py::arg("world"), py::arg("planner"),
          py::arg("budget_iterations") = 20000, py::arg("seed") = 1,
          "Plan start to goal with the whole world sensed; returns a result dict");
    m.def("run_trial", &run_incremental_trial, py::arg("world"), py::arg("planner"),
          py::arg("sensor_range") = 0.1, py::arg("budget_iterations") = 20000,
          py::arg("seed") = 1, py::arg("max_queries") = 1000,
          "Run one incremental sense-plan-follow trial; returns a result dict");
    m.def("oracle_shortest_path", &oracle_path, py::arg("world"),
          "Visibility-graph shortest path between the world's start and goal");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
