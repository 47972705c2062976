// Acceptance suite: runs the ten release criteria end to end and prints one
// PASS/FAIL line per criterion. The exit code is the number of failures, so
// ctest reports red if any criterion regresses.
//
// Iteration budgets below are this artifact's deterministic stand-ins for the
// paper's 0.1 s wall-clock budget, pinned from `incplan calibrate
// --seconds 0.5 --seed 42` on the reference build host (single core,
// gcc 11.4, Release). Re-pinning on different hardware changes absolute
// numbers but not the asserted properties.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "incplan/experiment.hpp"
#include "incplan/oracle.hpp"
#include "incplan/planner.hpp"
#include "incplan/records.hpp"
#include "incplan/rrtx.hpp"
#include "incplan/trial.hpp"
#include "incplan/world.hpp"

namespace {

using namespace incplan;

// --- pinned 0.1 s-equivalent per-planner iteration budgets (see header).
constexpr std::uint64_t kIters100msRrtConnect = 58372;
constexpr std::uint64_t kIters100msRrtConnectSmoothed = 22467;
constexpr std::uint64_t kIters100msRrtStar = 4498;
constexpr std::uint64_t kIters100msEitStar = 9230;

// Budget for the soundness/determinism matrix (criteria 1, 7, 9): small
// enough that the 1560-trial grid finishes well inside the 10-minute bound.
constexpr std::uint64_t kMatrixIters = 2000;

// Generous budget for the ASAO convergence check (criterion 2).
constexpr std::uint64_t kGenerousIters = 50000;

constexpr double kTinySlack = 1e-12;

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Criterion> g_report;

void report(const std::string &name, bool pass, const std::string &detail) {
    g_report.push_back({name, pass, detail});
    std::printf("%s %s - %s\n", name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 5) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// A world sensed everywhere, for single fully-observed queries.
struct FullySensed {
    GlobalWorld world;
    SensedRegion region;
    IncrementalView view;

    explicit FullySensed(GlobalWorld w)
        : world(std::move(w)), region(sense_everything(world)), view(world, region) {}

  private:
    // One radius-4 ball at the start covers the whole 2x2 workspace.
    static SensedRegion sense_everything(const GlobalWorld &world) {
        SensedRegion region(4.0);
        region.sense(world.start);
        return region;
    }
};

PlanResult run_query(const IncrementalView &view, Point2 start, Point2 goal, PlannerKind kind,
                     std::uint64_t iters, std::uint64_t seed) {
    PlanQuery query;
    query.start = start;
    query.goal = goal;
    query.view = &view;
    query.budget = Budget::iterations(iters);
    query.seed = seed;
    return plan(kind, query);
}

std::vector<TrialOutcome> run_cell(const GlobalWorld &world, const std::string &world_id,
                                   double sensor_range, PlannerKind kind, std::uint64_t iters,
                                   int trials, std::uint64_t base_seed) {
    std::vector<TrialOutcome> out;
    out.reserve(static_cast<std::size_t>(trials));
    const std::string bid = budget_id(Budget::iterations(iters));
    for (int t = 0; t < trials; ++t) {
        TrialSetup setup;
        setup.world = world;
        setup.planner = kind;
        setup.sensor_range = sensor_range;
        setup.budget = Budget::iterations(iters);
        setup.seed = trial_seed(base_seed, world_id, planner_id(kind), bid, t);
        out.push_back(run_trial(setup));
    }
    return out;
}

double median_length(const std::vector<TrialOutcome> &cell) {
    std::vector<double> values;
    for (const auto &t : cell) {
        values.push_back(t.success ? t.global_length
                                   : std::numeric_limits<double>::infinity());
    }
    return median(std::move(values));
}

double median_queries(const std::vector<TrialOutcome> &cell) {
    std::vector<double> values;
    for (const auto &t : cell) {
        values.push_back(t.success ? static_cast<double>(t.query_count)
                                   : std::numeric_limits<double>::infinity());
    }
    return median(std::move(values));
}

int successes(const std::vector<TrialOutcome> &cell) {
    int n = 0;
    for (const auto &t : cell) {
        n += t.success ? 1 : 0;
    }
    return n;
}

ExperimentConfig matrix_config() {
    ExperimentConfig config;
    config.worlds.push_back({"empty", make_empty_world(), 0.1});
    config.worlds.push_back({"wall_gap", make_wall_gap_world(), 0.075});
    config.worlds.push_back({"double_enclosure", make_double_enclosure_world(), 0.05});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        config.worlds.push_back({"rand_" + std::to_string(seed),
                                 generate_random_rectangles_world(seed), 0.1});
    }
    config.planners = all_planner_kinds();
    config.budgets = {Budget::iterations(kMatrixIters)};
    config.trials = 20;
    config.base_seed = 1;
    return config;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Criteria 1, 7, 9: soundness matrix, curve properties, byte determinism.

ResultsFile criterion_1(const std::string &out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig config = matrix_config();
    run_experiment(config, out_path, false, nullptr);
    const ResultsFile results = load_results(out_path);

    int trials = 0;
    int succ = 0;
    int replayed = 0;
    for (const TrialRow &row : results.rows) {
        ++trials;
        if (!row.success) {
            continue;
        }
        ++succ;
        const GlobalWorld &world = results.header.worlds.at(row.world);
        const Path path = row_executed_path(row, world.start);
        if (replay_path_valid(world, path)) {
            ++replayed;
        }
    }
    const double elapsed = seconds_since(t0);
    const bool pass = trials == 6 * 13 * 20 && replayed == succ && elapsed <= 600.0;
    report("C1", pass,
           std::to_string(trials) + " trials, " + std::to_string(succ) + " successes, " +
               std::to_string(replayed) + " replayed clean, " + fmt(elapsed, 1) + " s (limit 600)");
    return results;
}

void criterion_7(const ResultsFile &results) {
    int cells = 0;
    int bad = 0;
    std::string first_bad;
    for (const std::string &world : results.header.world_ids) {
        for (const std::string &planner : results.header.planners) {
            for (const std::string &budget : results.header.budgets) {
                ++cells;
                const std::vector<double> curve = success_curve(results, world, planner, budget);
                int trials = 0;
                int succ = 0;
                for (const TrialRow &row : results.rows) {
                    if (row.world == world && row.planner == planner && row.budget == budget) {
                        ++trials;
                        succ += row.success ? 1 : 0;
                    }
                }
                bool ok = !curve.empty() && curve.front() == 1.0 && trials > 0;
                for (std::size_t i = 0; ok && i + 1 < curve.size(); ++i) {
                    ok = curve[i + 1] <= curve[i];
                }
                const double rate = static_cast<double>(succ) / static_cast<double>(trials);
                ok = ok && curve.back() == rate;
                if (!ok) {
                    ++bad;
                    if (first_bad.empty()) {
                        first_bad = world + "/" + planner + "/" + budget;
                    }
                }
            }
        }
    }
    report("C7", bad == 0,
           std::to_string(cells) + " cells: curves monotone nonincreasing, final == success rate" +
               (bad == 0 ? "" : "; first violation " + first_bad));
}

void criterion_9(const std::string &first_path, const std::string &second_path) {
    run_experiment(matrix_config(), second_path, false, nullptr);
    const std::string a = read_file(first_path);
    const std::string b = read_file(second_path);
    const bool pass = !a.empty() && a == b;
    report("C9", pass,
           "two runs of the criterion-1 matrix: " + std::to_string(a.size()) + " vs " +
               std::to_string(b.size()) + " bytes, " + (a == b ? "byte-identical" : "DIFFER"));
}

// ---------------------------------------------------------------------------
// Criterion 2: ASAO convergence against the visibility-graph oracle.

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const int worlds = 50;
    int ok_eit = 0;
    int ok_rrt = 0;
    double worst_eit = 0.0;
    double worst_rrt = 0.0;
    for (std::uint64_t seed = 1; seed <= worlds; ++seed) {
        const FullySensed sensed(generate_random_rectangles_world(seed));
        const OracleResult oracle =
            oracle_shortest_path(sensed.world, sensed.world.start, sensed.world.goal);
        const PlanResult eit = run_query(sensed.view, sensed.world.start, sensed.world.goal,
                                         PlannerKind::EitStar, kGenerousIters, seed);
        const PlanResult rrt = run_query(sensed.view, sensed.world.start, sensed.world.goal,
                                         PlannerKind::RrtStar, kGenerousIters, seed);
        const double re = eit.solved() ? eit.cost / oracle.length
                                       : std::numeric_limits<double>::infinity();
        const double rr = rrt.solved() ? rrt.cost / oracle.length
                                       : std::numeric_limits<double>::infinity();
        worst_eit = std::max(worst_eit, re);
        worst_rrt = std::max(worst_rrt, rr);
        ok_eit += re <= 1.05 + kTinySlack ? 1 : 0;
        ok_rrt += rr <= 1.05 + kTinySlack ? 1 : 0;
    }
    const double elapsed = seconds_since(t0);
    const bool pass = ok_eit >= 45 && ok_rrt >= 45 && elapsed <= 300.0;
    report("C2", pass,
           "cost <= 1.05x oracle on " + std::to_string(ok_eit) + "/50 (eitstar, worst x" +
               fmt(worst_eit, 4) + ") and " + std::to_string(ok_rrt) + "/50 (rrt_star, worst x" +
               fmt(worst_rrt, 4) + "), need >= 45 each; " + fmt(elapsed, 1) + " s (limit 300)");
}

// ---------------------------------------------------------------------------
// Criterion 3: empty-world optimality at 0.1 s-equivalent budgets.

void criterion_3() {
    const FullySensed sensed(make_empty_world());
    const double direct = distance(sensed.world.start, sensed.world.goal);
    int eit_ok = 0;
    int smooth_ok = 0;
    int plain_valid = 0;
    std::vector<double> plain_ratios;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const PlanResult eit = run_query(sensed.view, sensed.world.start, sensed.world.goal,
                                         PlannerKind::EitStar, kIters100msEitStar, seed);
        eit_ok += eit.solved() && eit.cost <= 1.01 * direct + kTinySlack ? 1 : 0;
        const PlanResult smooth =
            run_query(sensed.view, sensed.world.start, sensed.world.goal,
                      PlannerKind::RrtConnectSmoothed, kIters100msRrtConnectSmoothed, seed);
        smooth_ok += smooth.solved() && smooth.cost <= 1.05 * direct + kTinySlack ? 1 : 0;
        const PlanResult plain =
            run_query(sensed.view, sensed.world.start, sensed.world.goal,
                      PlannerKind::RrtConnect, kIters100msRrtConnect, seed);
        plain_valid += plain.solved() && replay_path_valid(sensed.world, plain.path) ? 1 : 0;
        plain_ratios.push_back(plain.solved() ? plain.cost / direct
                                              : std::numeric_limits<double>::infinity());
    }
    const bool pass = eit_ok == 100 && smooth_ok >= 95 && plain_valid == 100;
    report("C3", pass,
           "eitstar <= 1.01x on " + std::to_string(eit_ok) + "/100 (need 100); smoothed <= 1.05x on " +
               std::to_string(smooth_ok) + "/100 (need 95); plain rrt_connect valid on " +
               std::to_string(plain_valid) + "/100, median x" + fmt(median(std::move(plain_ratios)), 3));
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5: Table I ordering reproduction.

void criterion_4() {
    const GlobalWorld world = make_wall_gap_world();
    const auto eit = run_cell(world, "wall_gap", 0.075, PlannerKind::EitStar, kIters100msEitStar,
                              100, 1);
    const auto smooth = run_cell(world, "wall_gap", 0.075, PlannerKind::RrtConnectSmoothed,
                                 kIters100msRrtConnectSmoothed, 100, 1);
    const auto plain = run_cell(world, "wall_gap", 0.075, PlannerKind::RrtConnect,
                                kIters100msRrtConnect, 100, 1);
    const int succ = successes(eit);
    const double le = median_length(eit);
    const double ls = median_length(smooth);
    const double lp = median_length(plain);
    const double qe = median_queries(eit);
    const double qs = median_queries(smooth);
    const bool pass = succ == 100 && le < ls && ls < lp && qe <= qs;
    report("C4", pass,
           "success " + std::to_string(succ) + "/100 (need 100, paper 100%); median length " +
               fmt(le) + " < " + fmt(ls) + " < " + fmt(lp) +
               " wanted (paper 0.389 < 1.716 < 1.945); median queries " + fmt(qe, 1) + " <= " +
               fmt(qs, 1) + " (paper 5 <= 13)");
}

void criterion_5() {
    const GlobalWorld world = make_double_enclosure_world();
    const OracleResult oracle = oracle_shortest_path(world, world.start, world.goal);
    const auto eit = run_cell(world, "double_enclosure", 0.05, PlannerKind::EitStar,
                              kIters100msEitStar, 100, 1);
    const auto smooth = run_cell(world, "double_enclosure", 0.05, PlannerKind::RrtConnectSmoothed,
                                 kIters100msRrtConnectSmoothed, 100, 1);
    const auto plain = run_cell(world, "double_enclosure", 0.05, PlannerKind::RrtConnect,
                                kIters100msRrtConnect, 100, 1);
    const int succ = successes(eit);
    const double le = median_length(eit);
    const double ls = median_length(smooth);
    const double lp = median_length(plain);
    bool forced_backtrack = true;
    for (const TrialOutcome &t : eit) {
        if (t.success && !(t.query_count > 1 && t.global_length > oracle.length)) {
            forced_backtrack = false;
        }
    }
    const bool pass = succ == 100 && le < ls && le < lp && forced_backtrack;
    report("C5", pass,
           "success " + std::to_string(succ) + "/100 (need 100, paper 100%); median length " +
               fmt(le) + " < both " + fmt(ls) + " and " + fmt(lp) +
               " (paper 2.005 < 6.051 < 6.317); every success > 1 query and > oracle " +
               fmt(oracle.length) + ": " + (forced_backtrack ? "yes" : "NO"));
}

// ---------------------------------------------------------------------------
// Criterion 6: random-rectangles aggregate sanity anchor.

void criterion_6() {
    const int world_count = 30;
    const int trials = 10;
    int anchored = 0;
    int worlds_eit_le_smooth = 0;
    int succ_e = 0;
    int succ_s = 0;
    int succ_p = 0;
    for (std::uint64_t seed = 1; seed <= world_count; ++seed) {
        const GlobalWorld world = generate_random_rectangles_world(seed);
        if (std::abs(distance(world.start, world.goal) - 0.70711) <= 1e-5) {
            ++anchored;
        }
        const std::string id = "rand_" + std::to_string(seed);
        const auto eit =
            run_cell(world, id, 0.1, PlannerKind::EitStar, kIters100msEitStar, trials, 1);
        const auto smooth = run_cell(world, id, 0.1, PlannerKind::RrtConnectSmoothed,
                                     kIters100msRrtConnectSmoothed, trials, 1);
        const auto plain =
            run_cell(world, id, 0.1, PlannerKind::RrtConnect, kIters100msRrtConnect, trials, 1);
        succ_e += successes(eit);
        succ_s += successes(smooth);
        succ_p += successes(plain);
        if (median_length(eit) <= median_length(smooth)) {
            ++worlds_eit_le_smooth;
        }
    }
    const bool pass = anchored == world_count &&
                      worlds_eit_le_smooth * 10 >= world_count * 8 && succ_e >= succ_s &&
                      succ_e >= succ_p;
    report("C6", pass,
           "straight distance 0.70711 on " + std::to_string(anchored) + "/" +
               std::to_string(world_count) + " worlds; eitstar median length <= smoothed on " +
               std::to_string(worlds_eit_le_smooth) + "/" + std::to_string(world_count) +
               " (need 24); total success eitstar " + std::to_string(succ_e) + " vs smoothed " +
               std::to_string(succ_s) + " and plain " + std::to_string(succ_p) +
               " of " + std::to_string(world_count * trials));
}

// ---------------------------------------------------------------------------
// Criterion 8: RRT^X repair exactness on a scripted discovery sequence.

void criterion_8() {
    GlobalWorld world;
    world.start = {-0.5, 0.0};
    world.goal = {0.5, 0.0};
    // Four slab walls with alternating passages, discovered one at a time.
    world.obstacles.push_back({{-0.32, -0.6}, {-0.28, 0.2}});
    world.obstacles.push_back({{-0.12, -0.2}, {-0.08, 0.6}});
    world.obstacles.push_back({{0.08, -0.6}, {0.12, 0.2}});
    world.obstacles.push_back({{0.28, -0.2}, {0.32, 0.6}});

    SensedRegion region(0.15);
    PlannerParams params;
    RrtxPlanner planner(params, false);

    const std::vector<Point2> stops = {
        {-0.5, 0.0}, {-0.3, 0.3}, {-0.1, -0.3}, {0.1, 0.3}, {0.3, -0.3}};

    bool pass = true;
    std::string detail;
    int total_blocked = 0;
    for (std::size_t step = 0; step < stops.size() && pass; ++step) {
        // Edges and their endpoints as the planner stored them before the
        // sensing update.
        const auto before_edges = planner.neighbor_edges();
        std::vector<Point2> pos(planner.vertex_count());
        for (std::size_t id = 0; id < planner.vertex_count(); ++id) {
            pos[id] = planner.vertex_view(id).position;
        }
        const auto tree_before = planner.tree_edges();

        region.sense(stops[step]);
        const IncrementalView view(world, region);

        // Brute-force expectation: every stored edge that the new view
        // invalidates, and the subset of them that were tree edges.
        std::set<std::pair<int, int>> expect_blocked;
        for (const auto &[u, v] : before_edges) {
            if (!view.is_motion_valid(pos[static_cast<std::size_t>(u)],
                                      pos[static_cast<std::size_t>(v)])) {
                expect_blocked.insert({u, v});
            }
        }
        int expect_severed = 0;
        for (const auto &[child, parent] : tree_before) {
            const auto key = std::minmax(child, parent);
            if (expect_blocked.count({key.first, key.second}) != 0) {
                ++expect_severed;
            }
        }

        const NotifyStats stats = planner.notify_changes(view);
        const auto after_edges = planner.neighbor_edges();
        std::set<std::pair<int, int>> expect_after(before_edges.begin(), before_edges.end());
        for (const auto &e : expect_blocked) {
            expect_after.erase(e);
        }
        const std::set<std::pair<int, int>> got_after(after_edges.begin(), after_edges.end());

        planner.settle();

        bool tree_valid = true;
        bool consistent = planner.inconsistency_queue_empty();
        for (const auto &[child, parent] : planner.tree_edges()) {
            tree_valid = tree_valid &&
                         view.is_motion_valid(planner.vertex_view(static_cast<std::size_t>(child)).position,
                                              planner.vertex_view(static_cast<std::size_t>(parent)).position);
        }
        for (std::size_t id = 0; id < planner.vertex_count(); ++id) {
            const auto v = planner.vertex_view(id);
            consistent = consistent && v.g == v.lmc;
        }

        total_blocked += stats.graph_edges_blocked;
        if (stats.graph_edges_blocked != static_cast<int>(expect_blocked.size()) ||
            stats.tree_edges_severed != expect_severed || got_after != expect_after ||
            !tree_valid || !consistent) {
            pass = false;
            detail = "step " + std::to_string(step + 1) + ": blocked " +
                     std::to_string(stats.graph_edges_blocked) + " (expect " +
                     std::to_string(expect_blocked.size()) + "), severed " +
                     std::to_string(stats.tree_edges_severed) + " (expect " +
                     std::to_string(expect_severed) + "), edge set " +
                     (got_after == expect_after ? "ok" : "MISMATCH") + ", tree " +
                     (tree_valid ? "valid" : "INVALID") + ", labels " +
                     (consistent ? "settled" : "INCONSISTENT");
            break;
        }

        PlanQuery query;
        query.start = stops[step];
        query.goal = world.goal;
        query.view = &view;
        query.budget = Budget::iterations(6000);
        query.seed = 90 + step;
        const PlanResult result = planner.plan(query);
        if (!result.solved()) {
            pass = false;
            detail = "step " + std::to_string(step + 1) + ": query unsolved";
        }
    }
    if (pass) {
        detail = "5 scripted queries: notify matched brute-force edge sets (" +
                 std::to_string(total_blocked) +
                 " blocked total), tree valid, g == lmc at quiescence";
    }
    report("C8", pass, detail);
}

// ---------------------------------------------------------------------------
// Criterion 10: explicit non-reproduction declarations.

void criterion_10() {
    std::printf("  declared not reproduced (hardware-dependent): absolute solution times "
                "(paper Table I)\n");
    std::printf("  declared not reproduced (hardware-dependent): RRT^X / RRT* success rates at "
                "fixed wall-clock budgets (paper Fig. 4-5)\n");
    std::printf("  declared out of scope: real-robot experiment (paper SIV-C, Fig. 1)\n");
#ifdef INCPLAN_REPO_DIR
    const std::filesystem::path readme = std::filesystem::path(INCPLAN_REPO_DIR) / "README.md";
    const std::string text = read_file(readme.string());
    const bool has_table = text.find("Observed") != std::string::npos &&
                           text.find("paper") != std::string::npos;
    report("C10", has_table,
           has_table ? "declarations above; README.md documents observed values next to the paper's"
                     : "README.md missing the observed-vs-paper comparison");
#else
    report("C10", false, "repo directory not configured at build time");
#endif
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "incplan_acceptance";
    std::filesystem::create_directories(tmp);
    const std::string matrix_a = (tmp / "matrix_a.jsonl").string();
    const std::string matrix_b = (tmp / "matrix_b.jsonl").string();

    const ResultsFile matrix = criterion_1(matrix_a);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(matrix);
    criterion_8();
    criterion_9(matrix_a, matrix_b);
    criterion_10();

    int failures = 0;
    for (const Criterion &c : g_report) {
        failures += c.pass ? 0 : 1;
    }
    std::printf("acceptance: %zu/%zu criteria pass in %.1f s\n", g_report.size() - failures,
                g_report.size(), seconds_since(t0));
    std::filesystem::remove_all(tmp);
    return failures;
}
