#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "incplan/records.hpp"

namespace incplan {

/// A grid of experiment cells: every world x planner x budget combination is
/// run for the same number of trials.
struct ExperimentConfig {
    struct WorldSpec {
        std::string id;
        GlobalWorld world;
        double sensor_range = 0.1;
    };

    std::vector<WorldSpec> worlds;
    std::vector<PlannerKind> planners;
    std::vector<Budget> budgets;
    PlannerParams params;
    int trials = 100;
    std::uint64_t base_seed = 1;
    int max_queries = 1000;
};

/// Seed of one trial, mixed from the base seed and the cell identity (not
/// the enumeration order, so resumed and reordered runs agree).
std::uint64_t trial_seed(std::uint64_t base_seed, const std::string &world_id,
                         const std::string &planner, const std::string &budget,
                         int trial);

/// Runs the whole grid sequentially and streams one JSONL row per trial to
/// `out_path` after a header line. With `resume`, trials already present in
/// the file are kept and skipped. `progress`, when given, receives one line
/// per finished cell.
void run_experiment(const ExperimentConfig &config, const std::string &out_path, bool resume,
                    std::ostream *progress);

/// Median over values that may include infinity; an even count averages the
/// two middle values (infinite when either is).
double median(std::vector<double> values);

/// Success/length/time/query statistics for one planner inside one
/// (world, budget) cell.
struct CellSummary {
    std::string world;
    std::string budget;
    std::string planner;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double median_length = 0.0;
    double median_queries = 0.0;
    double median_seconds = 0.0;    // wall mode only
    double median_iterations = 0.0; // iteration mode only
};

std::vector<CellSummary> summarize_cells(const ResultsFile &results);

/// Aggregate statistics of one planner across the random-world collection.
struct AggregateSummary {
    std::string budget;
    std::string planner;
    int trials = 0;
    int successes = 0;
    double total_success_rate = 0.0;
    double median_success_rate = 0.0; // median across worlds of per-world rate
    double median_rank_length = 0.0;
    double median_rank_time = 0.0; // seconds in wall mode, iterations otherwise
    double median_rank_queries = 0.0;
};

/// Per-planner aggregate over every world whose id starts with "rand": total
/// and median success rates plus the median across worlds of the per-world
/// rank in median length / time / queries (rank = 1 + number of strictly
/// better planners; ties share the smaller rank).
std::vector<AggregateSummary> aggregate_random_worlds(const ResultsFile &results);

/// Human-readable summary: one table per (world, budget) plus, when several
/// worlds share the "rand" prefix, the aggregate table above.
std::string summary_table(const ResultsFile &results);

/// Carried-forward success curve: entry q (1-based; entry 0 is always 1.0)
/// is the fraction of trials not yet failed at query index q. A failed trial
/// counts as failed from its first unsolved query onward; a successful trial
/// counts as succeeded at every index. Monotone nonincreasing; the final
/// entry equals the cell's overall success rate.
std::vector<double> success_curve(const ResultsFile &results, const std::string &world,
                                  const std::string &planner, const std::string &budget);

/// CSV with one line per (planner, q): "planner,q,success_rate".
std::string success_curves_csv(const ResultsFile &results, const std::string &world,
                               const std::string &budget);

} // namespace incplan
