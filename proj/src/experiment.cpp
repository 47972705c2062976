#include "incplan/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace incplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cell_key(const std::string &world, const std::string &planner,
                     const std::string &budget) {
    return world + "|" + planner + "|" + budget;
}

BudgetMode common_mode(const std::vector<Budget> &budgets) {
    if (budgets.empty()) {
        throw std::invalid_argument("experiment has no budgets");
    }
    for (const Budget &b : budgets) {
        if (b.mode != budgets.front().mode) {
            throw std::invalid_argument("experiment budgets must share one mode");
        }
    }
    return budgets.front().mode;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, const std::string &world_id,
                         const std::string &planner, const std::string &budget, int trial) {
    std::uint64_t h = mix_seed(base_seed, fnv1a(world_id));
    h = mix_seed(h, fnv1a(planner + "|" + budget));
    return mix_seed(h, static_cast<std::uint64_t>(trial));
}

void run_experiment(const ExperimentConfig &config, const std::string &out_path, bool resume,
                    std::ostream *progress) {
    if (config.worlds.empty() || config.planners.empty()) {
        throw std::invalid_argument("experiment needs at least one world and one planner");
    }
    const BudgetMode mode = common_mode(config.budgets);

    ResultsHeader header;
    header.time_mode = mode;
    if (mode == BudgetMode::WallClock) {
        header.host = host_fingerprint();
    }
    for (const auto &w : config.worlds) {
        header.world_ids.push_back(w.id);
        header.worlds[w.id] = w.world;
        header.sensor_ranges[w.id] = w.sensor_range;
    }
    for (PlannerKind kind : config.planners) {
        header.planners.push_back(planner_id(kind));
    }
    for (const Budget &b : config.budgets) {
        header.budgets.push_back(budget_id(b));
    }
    header.trials = config.trials;
    header.base_seed = config.base_seed;
    header.max_queries = config.max_queries;

    std::set<std::string> done;
    const bool resuming = resume && std::filesystem::exists(out_path);
    if (resuming) {
        const ResultsFile existing = load_results(out_path);
        if (existing.header.time_mode != mode) {
            throw std::runtime_error("resume: existing results use a different time unit");
        }
        for (const TrialRow &row : existing.rows) {
            done.insert(cell_key(row.world, row.planner, row.budget) + "|" +
                        std::to_string(row.trial));
        }
    }

    std::ofstream out(out_path, resuming ? std::ios::app : std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open results file for writing: " + out_path);
    }
    if (!resuming) {
        out << header_to_json(header) << '\n';
    }

    for (const auto &world_spec : config.worlds) {
        for (PlannerKind kind : config.planners) {
            const std::string planner = planner_id(kind);
            for (const Budget &budget : config.budgets) {
                const std::string bid = budget_id(budget);
                int ran = 0;
                for (int trial = 0; trial < config.trials; ++trial) {
                    const std::string key =
                        cell_key(world_spec.id, planner, bid) + "|" + std::to_string(trial);
                    if (done.count(key) != 0) {
                        continue;
                    }
                    TrialSetup setup;
                    setup.world = world_spec.world;
                    setup.planner = kind;
                    setup.params = config.params;
                    setup.sensor_range = world_spec.sensor_range;
                    setup.budget = budget;
                    setup.seed = trial_seed(config.base_seed, world_spec.id, planner, bid, trial);
                    setup.max_queries = config.max_queries;
                    const TrialOutcome outcome = run_trial(setup);

                    TrialRow row;
                    row.world = world_spec.id;
                    row.planner = planner;
                    row.budget = bid;
                    row.trial = trial;
                    row.seed = setup.seed;
                    row.success = outcome.success;
                    row.failure = outcome.failure_reason;
                    row.queries = outcome.query_count;
                    row.length = outcome.global_length;
                    row.seconds = outcome.global_seconds;
                    row.iterations = outcome.global_iterations;
                    row.query_records = outcome.queries;
                    out << trial_row_to_json(row, mode) << '\n';
                    out.flush();
                    ++ran;
                }
                if (progress != nullptr) {
                    *progress << "cell " << world_spec.id << " " << planner << " " << bid << ": "
                              << ran << " trials run, " << (config.trials - ran) << " resumed"
                              << std::endl;
                }
            }
        }
    }
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    const double lo = values[n / 2 - 1];
    const double hi = values[n / 2];
    if (std::isinf(lo) || std::isinf(hi)) {
        return kInf;
    }
    return (lo + hi) / 2.0;
}

std::vector<CellSummary> summarize_cells(const ResultsFile &results) {
    // Group rows by (world, budget, planner), keeping header order.
    std::map<std::string, std::vector<const TrialRow *>> groups;
    for (const TrialRow &row : results.rows) {
        groups[cell_key(row.world, row.planner, row.budget)].push_back(&row);
    }
    std::vector<CellSummary> out;
    for (const std::string &world : results.header.world_ids) {
        for (const std::string &budget : results.header.budgets) {
            for (const std::string &planner : results.header.planners) {
                const auto it = groups.find(cell_key(world, planner, budget));
                if (it == groups.end()) {
                    continue;
                }
                CellSummary cell;
                cell.world = world;
                cell.budget = budget;
                cell.planner = planner;
                cell.trials = static_cast<int>(it->second.size());
                std::vector<double> lengths;
                std::vector<double> queries;
                std::vector<double> seconds;
                std::vector<double> iterations;
                for (const TrialRow *row : it->second) {
                    cell.successes += row->success ? 1 : 0;
                    lengths.push_back(row->success ? row->length : kInf);
                    queries.push_back(row->success ? row->queries : kInf);
                    seconds.push_back(row->success ? row->seconds : kInf);
                    iterations.push_back(row->success ? static_cast<double>(row->iterations)
                                                      : kInf);
                }
                cell.success_rate = static_cast<double>(cell.successes) / cell.trials;
                cell.median_length = median(std::move(lengths));
                cell.median_queries = median(std::move(queries));
                cell.median_seconds = median(std::move(seconds));
                cell.median_iterations = median(std::move(iterations));
                out.push_back(cell);
            }
        }
    }
    return out;
}

namespace {

std::string format_value(double v) {
    if (std::isnan(v)) {
        return "-";
    }
    if (std::isinf(v)) {
        return "inf";
    }
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v;
    return s.str();
}

} // namespace

std::vector<AggregateSummary> aggregate_random_worlds(const ResultsFile &results) {
    const auto cells = summarize_cells(results);
    const bool wall = results.header.time_mode == BudgetMode::WallClock;

    std::vector<std::string> rand_worlds;
    for (const std::string &id : results.header.world_ids) {
        if (id.rfind("rand", 0) == 0) {
            rand_worlds.push_back(id);
        }
    }
    std::vector<AggregateSummary> out;
    if (rand_worlds.size() < 2) {
        return out;
    }

    // Rank of `value` among `field`: 1 + the number of strictly better
    // (smaller) entries, so tied planners share the smaller rank.
    const auto rank_of = [](double value, const std::vector<double> &field) {
        int better = 0;
        for (double m : field) {
            if (m < value) {
                ++better;
            }
        }
        return 1.0 + better;
    };

    for (const std::string &budget : results.header.budgets) {
        for (const std::string &planner : results.header.planners) {
            AggregateSummary agg;
            agg.budget = budget;
            agg.planner = planner;
            std::vector<double> rates;
            std::vector<double> rank_length;
            std::vector<double> rank_time;
            std::vector<double> rank_queries;
            for (const std::string &world : rand_worlds) {
                const CellSummary *own = nullptr;
                std::vector<double> lengths;
                std::vector<double> times;
                std::vector<double> queries;
                for (const CellSummary &cell : cells) {
                    if (cell.world != world || cell.budget != budget) {
                        continue;
                    }
                    lengths.push_back(cell.median_length);
                    times.push_back(wall ? cell.median_seconds : cell.median_iterations);
                    queries.push_back(cell.median_queries);
                    if (cell.planner == planner) {
                        own = &cell;
                    }
                }
                if (own == nullptr) {
                    continue;
                }
                agg.successes += own->successes;
                agg.trials += own->trials;
                rates.push_back(own->success_rate);
                rank_length.push_back(rank_of(own->median_length, lengths));
                rank_time.push_back(
                    rank_of(wall ? own->median_seconds : own->median_iterations, times));
                rank_queries.push_back(rank_of(own->median_queries, queries));
            }
            if (agg.trials == 0) {
                continue;
            }
            agg.total_success_rate = static_cast<double>(agg.successes) / agg.trials;
            agg.median_success_rate = median(std::move(rates));
            agg.median_rank_length = median(std::move(rank_length));
            agg.median_rank_time = median(std::move(rank_time));
            agg.median_rank_queries = median(std::move(rank_queries));
            out.push_back(agg);
        }
    }
    return out;
}

std::string summary_table(const ResultsFile &results) {
    const auto cells = summarize_cells(results);
    const bool wall = results.header.time_mode == BudgetMode::WallClock;
    std::ostringstream out;

    std::string current;
    for (const CellSummary &cell : cells) {
        const std::string section = cell.world + "|" + cell.budget;
        if (section != current) {
            current = section;
            out << "\n== world " << cell.world << ", budget " << cell.budget << " ==\n";
            out << std::left << std::setw(22) << "planner" << std::right << std::setw(10)
                << "success" << std::setw(13) << "med_length" << std::setw(13) << "med_queries"
                << std::setw(15) << (wall ? "med_seconds" : "med_iterations") << '\n';
        }
        out << std::left << std::setw(22) << cell.planner << std::right << std::setw(7)
            << cell.successes << "/" << std::left << std::setw(2) << cell.trials << std::right
            << std::setw(13) << format_value(cell.median_length) << std::setw(13)
            << format_value(cell.median_queries) << std::setw(15)
            << format_value(wall ? cell.median_seconds : cell.median_iterations) << '\n';
    }

    const auto aggregates = aggregate_random_worlds(results);
    std::string agg_budget;
    for (const AggregateSummary &agg : aggregates) {
        if (agg.budget != agg_budget) {
            agg_budget = agg.budget;
            out << "\n== aggregate over random worlds, budget " << agg.budget << " ==\n";
            out << std::left << std::setw(22) << "planner" << std::right << std::setw(12)
                << "success" << std::setw(12) << "med_succ" << std::setw(11) << "rk_length"
                << std::setw(9) << "rk_time" << std::setw(12) << "rk_queries" << '\n';
        }
        out << std::left << std::setw(22) << agg.planner << std::right << std::setw(8)
            << agg.successes << "/" << std::left << std::setw(5) << agg.trials << std::right
            << std::setw(10) << format_value(agg.median_success_rate) << std::setw(11)
            << format_value(agg.median_rank_length) << std::setw(9)
            << format_value(agg.median_rank_time) << std::setw(12)
            << format_value(agg.median_rank_queries) << '\n';
    }
    return out.str();
}

std::vector<double> success_curve(const ResultsFile &results, const std::string &world,
                                  const std::string &planner, const std::string &budget) {
    // Carried forward per Fig. 4: a trial that failed counts as failed from
    // its first unsolved query onward; a successful trial counts as a success
    // at every index, including indices past its completion.
    struct Life {
        bool success;
        int failed_at; // first unsolved query index; unused when successful
    };
    std::vector<Life> lives;
    int last_index = 1;
    for (const TrialRow &row : results.rows) {
        if (row.world != world || row.planner != planner || row.budget != budget) {
            continue;
        }
        Life life{row.success, row.queries + 1};
        last_index = std::max(last_index, row.success ? row.queries : life.failed_at);
        lives.push_back(life);
    }
    if (lives.empty()) {
        return {};
    }
    std::vector<double> curve(static_cast<std::size_t>(last_index) + 1, 0.0);
    curve[0] = 1.0;
    for (std::size_t q = 1; q < curve.size(); ++q) {
        int alive = 0;
        for (const Life &life : lives) {
            if (life.success || static_cast<int>(q) < life.failed_at) {
                ++alive;
            }
        }
        curve[q] = static_cast<double>(alive) / static_cast<double>(lives.size());
    }
    return curve;
}

std::string success_curves_csv(const ResultsFile &results, const std::string &world,
                               const std::string &budget) {
    std::ostringstream out;
    out << "planner,queries,success_rate\n";
    for (const std::string &planner : results.header.planners) {
        const auto curve = success_curve(results, world, planner, budget);
        for (std::size_t q = 0; q < curve.size(); ++q) {
            out << planner << ',' << q << ',' << curve[q] << '\n';
        }
    }
    return out.str();
}

} // namespace incplan
