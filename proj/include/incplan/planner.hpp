#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incplan/budget.hpp"
#include "incplan/geometry.hpp"
#include "incplan/random.hpp"
#include "incplan/world.hpp"

namespace incplan {

enum class PlannerKind {
    RrtConnect,
    RrtConnectSmoothed,
    RrtStar,
    Rrtx,         // continues refining for the whole budget
    RrtxInitial,  // stops at its first solution
    EitStar
};

/// Stable string ids used in CLI flags and results files.
std::string planner_id(PlannerKind kind);
std::optional<PlannerKind> parse_planner_id(const std::string &id);
const std::vector<PlannerKind> &all_planner_kinds();

/// Shared tuning constants. Defaults follow the evaluation setup: 0.3
/// maximum edge length and 0.05 goal bias for the single-tree samplers,
/// k-nearest graphs with a 1.001 rewire/connection factor, and EIT* batches
/// of 100 samples with a 1.2 repair inflation factor.
struct PlannerParams {
    double max_edge = 0.3;
    double goal_bias = 0.05;
    double rrt_star_rewire_factor = 1.001;
    double rrtx_rewire_factor = 1.0;
    int eit_batch_size = 100;
    double eit_radius_factor = 1.001;
    double eit_repair_factor = 1.2;
};

/// k-nearest-neighbor count for an RGG over n vertices in 2-d:
/// ceil(factor * e * (1 + 1/d) * ln(n)), clamped to at least 1.
std::size_t rgg_k(std::size_t n, double factor);

enum class PlanStatus { Solved, Failed };

struct PlanResult {
    PlanStatus status = PlanStatus::Failed;
    Path path;
    double cost = std::numeric_limits<double>::infinity();
    double seconds_total = 0.0;
    double seconds_to_initial = std::numeric_limits<double>::infinity();
    std::uint64_t iterations_total = 0;
    std::uint64_t iterations_to_initial = 0;
    bool early_exit = false; // stopped early because no better path can exist
    // Anytime cost improvements as (iterations used, cost) pairs.
    std::vector<std::pair<std::uint64_t, double>> cost_trace;

    bool solved() const { return status == PlanStatus::Solved; }
};

struct PlanQuery {
    Point2 start;
    Point2 goal;
    const IncrementalView *view = nullptr;
    Budget budget;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when the query is unusable: no view, or a
/// start/goal that the view already knows to be invalid.
void validate_query(const PlanQuery &query);

/// Goal-biased uniform sampling: with probability `bias` returns `target`,
/// otherwise a uniform point in the view's bounds. Does not filter validity.
Point2 sample_state(RandomStream &rng, const IncrementalView &view, Point2 target, double bias);

/// Moves from `from` toward `to`, at most `max_edge` far.
Point2 steer(Point2 from, Point2 to, double max_edge);

/// Statistics from an out-of-budget world-change notification (RRT^X).
struct NotifyStats {
    int tree_edges_severed = 0;
    int graph_edges_blocked = 0;
    double detection_seconds = 0.0; // measured but never charged to a budget
};

/// A planner instance lives for one trial. Stateless planners solve each
/// query from scratch in plan(); RRT^X keeps its graph across queries and
/// additionally receives notify_changes() whenever the sensed region grew.
class Planner {
  public:
    virtual ~Planner() = default;
    virtual PlannerKind kind() const = 0;
    virtual PlanResult plan(const PlanQuery &query) = 0;
    virtual NotifyStats notify_changes(const IncrementalView &view) {
        (void)view;
        return {};
    }
};

std::unique_ptr<Planner> make_planner(PlannerKind kind, const PlannerParams &params = {});

/// One-shot convenience: builds a fresh planner and answers a single query.
PlanResult plan(PlannerKind kind, const PlanQuery &query, const PlannerParams &params = {});

} // namespace incplan
