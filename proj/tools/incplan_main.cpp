// Command line front end: runs experiment grids, summarizes results files,
// emits success curves and SVG traces, and calibrates iteration budgets.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incplan/experiment.hpp"
#include "incplan/svg_trace.hpp"
#include "incplan/world_io.hpp"

namespace {

using namespace incplan;

double default_sensor_range(const std::string &world_id) {
    if (world_id == "wall_gap") {
        return 0.075;
    }
    if (world_id == "double_enclosure") {
        return 0.05;
    }
    return 0.1; // empty and random-rectangle worlds
}

// World specs: a named world, "rand:<seed>" for a random-rectangles world,
// or a path to a world JSON file.
ExperimentConfig::WorldSpec make_world_spec(const std::string &spec) {
    ExperimentConfig::WorldSpec out;
    if (spec == "empty" || spec == "wall_gap" || spec == "double_enclosure") {
        out.id = spec;
        out.world = make_named_world(spec);
    } else if (spec.rfind("rand:", 0) == 0) {
        const std::uint64_t seed = std::stoull(spec.substr(5));
        out.id = "rand_" + std::to_string(seed);
        out.world = generate_random_rectangles_world(seed);
    } else if (std::filesystem::exists(spec)) {
        out.id = std::filesystem::path(spec).stem().string();
        out.world = load_world(spec);
    } else {
        throw CLI::ValidationError("--world", "unknown world spec: " + spec);
    }
    out.sensor_range = default_sensor_range(out.id);
    return out;
}

// Plain "key = value" config files; '#' starts a comment. List values are
// comma separated. Command line flags take precedence.
std::map<std::string, std::string> parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot open config file: " + path);
    }
    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--config", "line " + std::to_string(line_no) +
                                                       ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.push_back(item.substr(b, e - b + 1));
        }
    }
    return out;
}

std::vector<PlannerKind> parse_planners(const std::vector<std::string> &ids) {
    std::vector<PlannerKind> out;
    for (const std::string &id : ids) {
        if (id == "all") {
            return all_planner_kinds();
        }
        const auto kind = parse_planner_id(id);
        if (!kind) {
            throw CLI::ValidationError("--planner", "unknown planner: " + id);
        }
        out.push_back(*kind);
    }
    return out;
}

void write_text_output(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    out << text;
}

int cmd_run(const std::map<std::string, std::string> &config,
            std::vector<std::string> world_specs, std::vector<std::string> planner_ids,
            std::vector<double> budget_ms, std::vector<std::uint64_t> budget_iters,
            double sensor_range, int trials, std::uint64_t seed, int max_queries,
            std::string out_path, bool resume) {
    // Fill anything the command line left unset from the config file.
    const auto from_config = [&](const char *key) {
        const auto it = config.find(key);
        return it == config.end() ? std::string() : it->second;
    };
    if (world_specs.empty() && !from_config("worlds").empty()) {
        world_specs = split_list(from_config("worlds"));
    }
    if (planner_ids.empty() && !from_config("planners").empty()) {
        planner_ids = split_list(from_config("planners"));
    }
    if (budget_ms.empty() && !from_config("budget_ms").empty()) {
        for (const std::string &v : split_list(from_config("budget_ms"))) {
            budget_ms.push_back(std::stod(v));
        }
    }
    if (budget_iters.empty() && !from_config("budget_iters").empty()) {
        for (const std::string &v : split_list(from_config("budget_iters"))) {
            budget_iters.push_back(std::stoull(v));
        }
    }
    if (sensor_range <= 0.0 && !from_config("sensor_range").empty()) {
        sensor_range = std::stod(from_config("sensor_range"));
    }
    if (trials <= 0) {
        trials = from_config("trials").empty() ? 100 : std::stoi(from_config("trials"));
    }
    if (seed == 0 && !from_config("seed").empty()) {
        seed = std::stoull(from_config("seed"));
    }
    if (max_queries <= 0) {
        max_queries =
            from_config("max_queries").empty() ? 1000 : std::stoi(from_config("max_queries"));
    }
    if (out_path.empty()) {
        out_path = from_config("out");
    }

    if (world_specs.empty()) {
        throw CLI::ValidationError("--world", "no worlds given (flag or config file)");
    }
    if (planner_ids.empty()) {
        planner_ids = {"all"};
    }
    if (out_path.empty()) {
        throw CLI::ValidationError("--out", "no output path given (flag or config file)");
    }
    if (budget_ms.empty() == budget_iters.empty()) {
        throw CLI::ValidationError(
            "--budget-ms", "give exactly one of --budget-ms or --budget-iters (or config)");
    }

    ExperimentConfig experiment;
    for (const std::string &spec : world_specs) {
        experiment.worlds.push_back(make_world_spec(spec));
        if (sensor_range > 0.0) {
            experiment.worlds.back().sensor_range = sensor_range;
        }
    }
    experiment.planners = parse_planners(planner_ids);
    for (double ms : budget_ms) {
        experiment.budgets.push_back(Budget::wall(ms / 1000.0));
    }
    for (std::uint64_t it : budget_iters) {
        experiment.budgets.push_back(Budget::iterations(it));
    }
    experiment.trials = trials;
    experiment.base_seed = seed == 0 ? 1 : seed;
    experiment.max_queries = max_queries;

    run_experiment(experiment, out_path, resume, &std::cerr);
    std::cerr << "results written to " << out_path << std::endl;
    return 0;
}

int cmd_calibrate(const std::string &world_spec, double seconds, std::uint64_t seed) {
    const auto spec = make_world_spec(world_spec);
    std::cout << "calibration world: " << spec.id << ", >= " << seconds
              << " s of planning per planner\n";
    std::cout << "planner, iterations_per_second, iters_for_10ms, 50ms, 100ms\n";
    for (PlannerKind kind : all_planner_kinds()) {
        double total_seconds = 0.0;
        std::uint64_t total_iterations = 0;
        int trial = 0;
        while (total_seconds < seconds) {
            TrialSetup setup;
            setup.world = spec.world;
            setup.planner = kind;
            setup.sensor_range = spec.sensor_range;
            setup.budget = Budget::wall(0.1);
            setup.seed = mix_seed(seed, static_cast<std::uint64_t>(trial++));
            const TrialOutcome outcome = run_trial(setup);
            total_seconds += outcome.global_seconds;
            total_iterations += outcome.global_iterations;
        }
        const double rate = static_cast<double>(total_iterations) / total_seconds;
        std::cout << planner_id(kind) << ", " << static_cast<std::uint64_t>(rate) << ", "
                  << static_cast<std::uint64_t>(rate * 0.010) << ", "
                  << static_cast<std::uint64_t>(rate * 0.050) << ", "
                  << static_cast<std::uint64_t>(rate * 0.100) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Incremental planning experiments with independent per-query planners"};
    app.require_subcommand(1);

    // --- run ---
    auto *run = app.add_subcommand("run", "Run an experiment grid and write a results file");
    std::string config_path;
    std::vector<std::string> world_specs;
    std::vector<std::string> planner_ids;
    std::vector<double> budget_ms;
    std::vector<std::uint64_t> budget_iters;
    double sensor_range = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    int max_queries = 0;
    std::string out_path;
    bool resume = false;
    run->add_option("--config", config_path, "Config file with key = value lines");
    run->add_option("--world", world_specs,
                    "World spec: empty | wall_gap | double_enclosure | rand:<seed> | <file>")
        ->delimiter(',');
    run->add_option("--planner", planner_ids, "Planner ids or 'all'")->delimiter(',');
    run->add_option("--budget-ms", budget_ms, "Per-query wall budgets in milliseconds")
        ->delimiter(',');
    run->add_option("--budget-iters", budget_iters,
                    "Per-query iteration budgets (deterministic mode)")
        ->delimiter(',');
    run->add_option("--sensor-range", sensor_range, "Sensor radius override for all worlds");
    run->add_option("--trials", trials, "Trials per cell (default 100)");
    run->add_option("--seed", seed, "Base seed (default 1)");
    run->add_option("--max-queries", max_queries, "Query cap per trial (default 1000)");
    run->add_option("--out", out_path, "Results file (JSON lines)");
    run->add_flag("--resume", resume, "Keep finished trials found in the output file");

    // --- summarize ---
    auto *summarize = app.add_subcommand("summarize", "Tabulate a results file");
    std::string sum_in;
    std::string sum_out;
    summarize->add_option("--in", sum_in, "Results file")->required();
    summarize->add_option("--out", sum_out, "Write the table here instead of stdout");

    // --- curves ---
    auto *curves = app.add_subcommand("curves", "Success rate vs. query count as CSV");
    std::string cur_in;
    std::string cur_out;
    std::string cur_world;
    std::string cur_budget;
    curves->add_option("--in", cur_in, "Results file")->required();
    curves->add_option("--world", cur_world, "World id")->required();
    curves->add_option("--budget", cur_budget, "Budget id, e.g. w0.100000 or i2000")->required();
    curves->add_option("--out", cur_out, "Write the CSV here instead of stdout");

    // --- trace ---
    auto *trace = app.add_subcommand("trace", "Render executed trials as an SVG");
    std::string tr_in;
    std::string tr_world;
    std::string tr_planner;
    std::string tr_budget;
    int tr_trial = -1;
    std::string tr_out;
    trace->add_option("--in", tr_in, "Results file")->required();
    trace->add_option("--world", tr_world, "World id")->required();
    trace->add_option("--planner", tr_planner, "Only this planner's trials");
    trace->add_option("--budget", tr_budget, "Only this budget's trials");
    trace->add_option("--trial", tr_trial,
                      "Render just this trial index, with its sensing balls");
    trace->add_option("--out", tr_out, "SVG output path")->required();

    // --- world ---
    auto *world_cmd = app.add_subcommand("world", "Generate a world and save it as JSON");
    std::string w_spec;
    std::string w_out;
    world_cmd->add_option("--world", w_spec, "World spec (see run)")->required();
    world_cmd->add_option("--out", w_out, "World JSON path")->required();

    // --- calibrate ---
    auto *calibrate =
        app.add_subcommand("calibrate", "Measure planner iteration rates on this machine");
    std::string cal_world = "rand:1";
    double cal_seconds = 2.0;
    std::uint64_t cal_seed = 12345;
    calibrate->add_option("--world", cal_world, "Calibration world spec");
    calibrate->add_option("--seconds", cal_seconds, "Planning time to accumulate per planner");
    calibrate->add_option("--seed", cal_seed, "Calibration seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::map<std::string, std::string> config;
            if (!config_path.empty()) {
                config = parse_config_file(config_path);
            }
            return cmd_run(config, world_specs, planner_ids, budget_ms, budget_iters,
                           sensor_range, trials, seed, max_queries, out_path, resume);
        }
        if (summarize->parsed()) {
            write_text_output(summary_table(load_results(sum_in)), sum_out);
            return 0;
        }
        if (curves->parsed()) {
            write_text_output(success_curves_csv(load_results(cur_in), cur_world, cur_budget),
                              cur_out);
            return 0;
        }
        if (trace->parsed()) {
            const ResultsFile results = load_results(tr_in);
            const auto world_it = results.header.worlds.find(tr_world);
            if (world_it == results.header.worlds.end()) {
                throw std::runtime_error("world not in results file: " + tr_world);
            }
            std::vector<TrialRow> selected;
            for (const TrialRow &row : results.rows) {
                if (row.world == tr_world &&
                    (tr_planner.empty() || row.planner == tr_planner) &&
                    (tr_budget.empty() || row.budget == tr_budget) &&
                    (tr_trial < 0 || row.trial == tr_trial)) {
                    selected.push_back(row);
                }
            }
            if (selected.empty()) {
                throw std::runtime_error("no matching trials in results file");
            }
            // Single-trial renders include the sensing balls (Fig. 3 style);
            // multi-trial renders show just the hued paths (Fig. 2 style).
            write_text_output(trace_svg(world_it->second,
                                        results.header.sensor_ranges.at(tr_world), selected,
                                        selected.size() == 1),
                              tr_out);
            return 0;
        }
        if (world_cmd->parsed()) {
            save_world(make_world_spec(w_spec).world, w_out);
            return 0;
        }
        if (calibrate->parsed()) {
            return cmd_calibrate(cal_world, cal_seconds, cal_seed);
        }
    } catch (const std::exception &error) {
        std::cerr << "error: " << error.what() << std::endl;
        return 1;
    }
    return 0;
}
