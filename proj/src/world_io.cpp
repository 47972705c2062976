#include "incplan/world_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace incplan {

namespace {

using nlohmann::json;

json rect_to_json(const AxisRect &rect) {
    return json{{"min", {rect.min.x, rect.min.y}}, {"max", {rect.max.x, rect.max.y}}};
}

AxisRect rect_from_json(const json &j) {
    AxisRect rect;
    rect.min = {j.at("min").at(0).get<double>(), j.at("min").at(1).get<double>()};
    rect.max = {j.at("max").at(0).get<double>(), j.at("max").at(1).get<double>()};
    if (rect.min.x > rect.max.x || rect.min.y > rect.max.y) {
        throw std::invalid_argument("world json: rectangle with min > max");
    }
    return rect;
}

} // namespace

std::string world_to_json(const GlobalWorld &world) {
    json j;
    j["bounds"] = rect_to_json(world.bounds);
    j["start"] = {world.start.x, world.start.y};
    j["goal"] = {world.goal.x, world.goal.y};
    j["obstacles"] = json::array();
    for (const AxisRect &rect : world.obstacles) {
        j["obstacles"].push_back(rect_to_json(rect));
    }
    return j.dump(2);
}

GlobalWorld world_from_json(const std::string &json_text) {
    const json j = json::parse(json_text);
    GlobalWorld world;
    world.bounds = rect_from_json(j.at("bounds"));
    world.start = {j.at("start").at(0).get<double>(), j.at("start").at(1).get<double>()};
    world.goal = {j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
    for (const json &rect : j.at("obstacles")) {
        world.obstacles.push_back(rect_from_json(rect));
    }
    return world;
}

void save_world(const GlobalWorld &world, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open world file for writing: " + path);
    }
    out << world_to_json(world) << '\n';
}

GlobalWorld load_world(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open world file: " + path);
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return world_from_json(text);
}

} // namespace incplan
