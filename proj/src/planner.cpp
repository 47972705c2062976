#include "incplan/planner.hpp"

#include <cmath>
#include <stdexcept>

#include "incplan/eitstar.hpp"
#include "incplan/rrt_connect.hpp"
#include "incplan/rrt_star.hpp"
#include "incplan/rrtx.hpp"

namespace incplan {

std::string planner_id(PlannerKind kind) {
    switch (kind) {
    case PlannerKind::RrtConnect:
        return "rrt_connect";
    case PlannerKind::RrtConnectSmoothed:
        return "rrt_connect_smoothed";
    case PlannerKind::RrtStar:
        return "rrt_star";
    case PlannerKind::Rrtx:
        return "rrtx";
    case PlannerKind::RrtxInitial:
        return "rrtx_initial";
    case PlannerKind::EitStar:
        return "eitstar";
    }
    throw std::logic_error("unreachable planner kind");
}

std::optional<PlannerKind> parse_planner_id(const std::string &id) {
    for (PlannerKind kind : all_planner_kinds()) {
        if (planner_id(kind) == id) {
            return kind;
        }
    }
    return std::nullopt;
}

const std::vector<PlannerKind> &all_planner_kinds() {
    static const std::vector<PlannerKind> kinds = {
        PlannerKind::RrtConnect, PlannerKind::RrtConnectSmoothed, PlannerKind::RrtStar,
        PlannerKind::Rrtx,       PlannerKind::RrtxInitial,        PlannerKind::EitStar};
    return kinds;
}

std::size_t rgg_k(std::size_t n, double factor) {
    if (n < 2) {
        return 1;
    }
    // e * (1 + 1/d) with d = 2.
    constexpr double kRggConstant = 2.718281828459045 * 1.5;
    const double k = std::ceil(factor * kRggConstant * std::log(static_cast<double>(n)));
    return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

void validate_query(const PlanQuery &query) {
    if (query.view == nullptr) {
        throw std::invalid_argument("plan query has no world view");
    }
    if (!query.view->is_state_valid(query.start)) {
        throw std::invalid_argument("plan query start state is invalid");
    }
    if (!query.view->is_state_valid(query.goal)) {
        throw std::invalid_argument("plan query goal state is invalid");
    }
    if (query.budget.mode == BudgetMode::WallClock ? !(query.budget.wall_seconds > 0.0)
                                                   : query.budget.iteration_limit == 0) {
        throw std::invalid_argument("plan query budget is empty");
    }
}

Point2 sample_state(RandomStream &rng, const IncrementalView &view, Point2 target, double bias) {
    // One bias draw, then (x, y); the draw order is part of the
    // reproducibility contract.
    if (bias > 0.0 && rng.uniform01() < bias) {
        return target;
    }
    return rng.uniform_in_rect(view.bounds());
}

Point2 steer(Point2 from, Point2 to, double max_edge) {
    const double d = distance(from, to);
    if (d <= max_edge) {
        return to;
    }
    return lerp(from, to, max_edge / d);
}

std::unique_ptr<Planner> make_planner(PlannerKind kind, const PlannerParams &params) {
    switch (kind) {
    case PlannerKind::RrtConnect:
        return std::make_unique<RrtConnectPlanner>(params, /*smooth=*/false);
    case PlannerKind::RrtConnectSmoothed:
        return std::make_unique<RrtConnectPlanner>(params, /*smooth=*/true);
    case PlannerKind::RrtStar:
        return std::make_unique<RrtStarPlanner>(params);
    case PlannerKind::Rrtx:
        return std::make_unique<RrtxPlanner>(params, /*initial_only=*/false);
    case PlannerKind::RrtxInitial:
        return std::make_unique<RrtxPlanner>(params, /*initial_only=*/true);
    case PlannerKind::EitStar:
        return std::make_unique<EitStarPlanner>(params);
    }
    throw std::logic_error("unreachable planner kind");
}

PlanResult plan(PlannerKind kind, const PlanQuery &query, const PlannerParams &params) {
    return make_planner(kind, params)->plan(query);
}

} // namespace incplan
