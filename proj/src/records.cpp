#include "incplan/records.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "incplan/world_io.hpp"

namespace incplan {

namespace {

using nlohmann::json;

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json &j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

// Infinity is not representable in JSON; lengths of failed trials are
// encoded as null and decoded back to infinity.
json finite_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

double finite_or_inf(const json &j) {
    if (j.is_null()) {
        return std::numeric_limits<double>::infinity();
    }
    return j.get<double>();
}

} // namespace

std::string budget_id(const Budget &budget) {
    std::ostringstream out;
    if (budget.mode == BudgetMode::WallClock) {
        out << 'w' << std::fixed;
        out.precision(6);
        out << budget.wall_seconds;
    } else {
        out << 'i' << budget.iteration_limit;
    }
    return out.str();
}

Budget budget_from_id(const std::string &id) {
    if (id.size() < 2) {
        throw std::invalid_argument("bad budget id: " + id);
    }
    if (id[0] == 'w') {
        return Budget::wall(std::stod(id.substr(1)));
    }
    if (id[0] == 'i') {
        return Budget::iterations(std::stoull(id.substr(1)));
    }
    throw std::invalid_argument("bad budget id: " + id);
}

std::string trial_row_to_json(const TrialRow &row, BudgetMode time_mode) {
    const bool with_time = time_mode == BudgetMode::WallClock;
    json j;
    j["type"] = "trial";
    j["world"] = row.world;
    j["planner"] = row.planner;
    j["budget"] = row.budget;
    j["trial"] = row.trial;
    j["seed"] = row.seed;
    j["success"] = row.success;
    j["failure"] = row.failure;
    j["queries"] = row.queries;
    j["length"] = finite_or_null(row.length);
    j["iterations"] = row.iterations;
    if (with_time) {
        j["seconds"] = row.seconds;
    }
    json queries = json::array();
    for (const QueryRecord &q : row.query_records) {
        json qj;
        qj["i"] = q.index;
        qj["from"] = point_to_json(q.from);
        qj["solved"] = q.solved;
        qj["cost"] = finite_or_null(q.plan_cost);
        qj["iters"] = q.plan_iterations;
        qj["early"] = q.early_exit;
        qj["s"] = q.exit_param;
        qj["flen"] = q.followed_length;
        json pts = json::array();
        for (Point2 p : q.followed) {
            pts.push_back(point_to_json(p));
        }
        qj["followed"] = pts;
        qj["severed"] = q.notify.tree_edges_severed;
        qj["blocked"] = q.notify.graph_edges_blocked;
        if (with_time) {
            qj["secs"] = q.plan_seconds;
            qj["detect_secs"] = q.notify.detection_seconds;
        }
        queries.push_back(qj);
    }
    j["query_records"] = queries;
    return j.dump();
}

TrialRow trial_row_from_json(const std::string &line) {
    const json j = json::parse(line);
    TrialRow row;
    row.world = j.at("world").get<std::string>();
    row.planner = j.at("planner").get<std::string>();
    row.budget = j.at("budget").get<std::string>();
    row.trial = j.at("trial").get<int>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.success = j.at("success").get<bool>();
    row.failure = j.at("failure").get<std::string>();
    row.queries = j.at("queries").get<int>();
    row.length = finite_or_inf(j.at("length"));
    row.iterations = j.at("iterations").get<std::uint64_t>();
    if (j.contains("seconds")) {
        row.seconds = j.at("seconds").get<double>();
    }
    for (const json &qj : j.at("query_records")) {
        QueryRecord q;
        q.index = qj.at("i").get<int>();
        q.from = point_from_json(qj.at("from"));
        q.solved = qj.at("solved").get<bool>();
        q.plan_cost = finite_or_inf(qj.at("cost"));
        q.plan_iterations = qj.at("iters").get<std::uint64_t>();
        q.early_exit = qj.at("early").get<bool>();
        q.exit_param = qj.at("s").get<double>();
        q.followed_length = qj.at("flen").get<double>();
        for (const json &pj : qj.at("followed")) {
            q.followed.push_back(point_from_json(pj));
        }
        q.notify.tree_edges_severed = qj.at("severed").get<int>();
        q.notify.graph_edges_blocked = qj.at("blocked").get<int>();
        if (qj.contains("secs")) {
            q.plan_seconds = qj.at("secs").get<double>();
        }
        if (qj.contains("detect_secs")) {
            q.notify.detection_seconds = qj.at("detect_secs").get<double>();
        }
        row.query_records.push_back(std::move(q));
    }
    return row;
}

Path row_executed_path(const TrialRow &row, const Point2 &start) {
    Path path({start});
    for (const QueryRecord &q : row.query_records) {
        if (q.solved && !q.followed.empty()) {
            path.append(Path(q.followed));
        }
    }
    return path;
}

std::string host_fingerprint() {
    std::string model = "unknown-cpu";
    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        const auto pos = line.find("model name");
        if (pos == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                model = line.substr(colon + 1);
                const auto first = model.find_first_not_of(' ');
                model = first == std::string::npos ? "" : model.substr(first);
            }
            break;
        }
    }
    std::ostringstream out;
    out << model << " x" << std::thread::hardware_concurrency();
    return out.str();
}

std::string header_to_json(const ResultsHeader &header) {
    json j;
    j["type"] = "header";
    j["schema"] = header.schema;
    j["time_unit"] = header.time_mode == BudgetMode::WallClock ? "seconds" : "iterations";
    if (!header.host.empty()) {
        j["host"] = header.host;
    }
    json worlds = json::array();
    for (const std::string &id : header.world_ids) {
        json w;
        w["id"] = id;
        w["sensor_range"] = header.sensor_ranges.at(id);
        w["world"] = json::parse(world_to_json(header.worlds.at(id)));
        worlds.push_back(w);
    }
    j["worlds"] = worlds;
    j["planners"] = header.planners;
    j["budgets"] = header.budgets;
    j["trials"] = header.trials;
    j["base_seed"] = header.base_seed;
    j["max_queries"] = header.max_queries;
    return j.dump();
}

ResultsHeader header_from_json(const std::string &line) {
    const json j = json::parse(line);
    if (j.value("type", "") != "header" || j.value("schema", "") != "incplan-results-v1") {
        throw std::invalid_argument("results file: unrecognized header line");
    }
    ResultsHeader header;
    header.time_mode = j.at("time_unit").get<std::string>() == "seconds"
                           ? BudgetMode::WallClock
                           : BudgetMode::Iterations;
    header.host = j.value("host", "");
    for (const json &w : j.at("worlds")) {
        const auto id = w.at("id").get<std::string>();
        header.world_ids.push_back(id);
        header.sensor_ranges[id] = w.at("sensor_range").get<double>();
        header.worlds[id] = world_from_json(w.at("world").dump());
    }
    header.planners = j.at("planners").get<std::vector<std::string>>();
    header.budgets = j.at("budgets").get<std::vector<std::string>>();
    header.trials = j.at("trials").get<int>();
    header.base_seed = j.at("base_seed").get<std::uint64_t>();
    header.max_queries = j.at("max_queries").get<int>();
    return header;
}

ResultsFile load_results(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open results file: " + path);
    }
    ResultsFile file;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (!have_header) {
            file.header = header_from_json(line);
            have_header = true;
            continue;
        }
        file.rows.push_back(trial_row_from_json(line));
    }
    if (!have_header) {
        throw std::runtime_error("results file has no header line: " + path);
    }
    return file;
}

} // namespace incplan
