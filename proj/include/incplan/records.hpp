#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "incplan/budget.hpp"
#include "incplan/trial.hpp"
#include "incplan/world.hpp"

namespace incplan {

/// Stable identifier a budget is keyed by in results files: "w0.100000" for
/// 0.1 s of wall time, "i2000" for 2000 iterations.
std::string budget_id(const Budget &budget);
Budget budget_from_id(const std::string &id);

/// One trial, as stored in a results file. In iteration mode every
/// wall-clock field is omitted from the file (and zero after loading) so
/// that repeated runs produce byte-identical files.
struct TrialRow {
    std::string world;
    std::string planner;
    std::string budget;
    int trial = 0;
    std::uint64_t seed = 0;
    bool success = false;
    std::string failure;
    int queries = 0;
    double length = std::numeric_limits<double>::infinity();
    double seconds = 0.0;
    std::uint64_t iterations = 0;
    std::vector<QueryRecord> query_records;
};

std::string trial_row_to_json(const TrialRow &row, BudgetMode time_mode);
TrialRow trial_row_from_json(const std::string &line);

/// Rebuilds the executed global path of a trial from its per-query followed
/// prefixes, exactly as the harness concatenated them. `start` is the trial's
/// start state (from the world the row was run on).
Path row_executed_path(const TrialRow &row, const Point2 &start);

/// CPU model and core count of this machine, recorded in wall-clock results
/// because absolute times are hardware-dependent.
std::string host_fingerprint();

struct ResultsHeader {
    std::string schema = "incplan-results-v1";
    BudgetMode time_mode = BudgetMode::WallClock;
    /// Host fingerprint; filled for wall-clock runs, empty (and omitted from
    /// the file) in iteration mode so reruns stay byte-identical.
    std::string host;
    std::vector<std::string> world_ids;
    std::map<std::string, GlobalWorld> worlds;
    std::map<std::string, double> sensor_ranges;
    std::vector<std::string> planners;
    std::vector<std::string> budgets;
    int trials = 0;
    std::uint64_t base_seed = 0;
    int max_queries = 0;
};

std::string header_to_json(const ResultsHeader &header);
ResultsHeader header_from_json(const std::string &line);

struct ResultsFile {
    ResultsHeader header;
    std::vector<TrialRow> rows;
};

ResultsFile load_results(const std::string &path);

} // namespace incplan
