#pragma once

#include <string>

#include "incplan/world.hpp"

namespace incplan {

/// JSON encoding of a world: bounds, obstacle list, start, goal.
std::string world_to_json(const GlobalWorld &world);
GlobalWorld world_from_json(const std::string &json_text);

void save_world(const GlobalWorld &world, const std::string &path);
GlobalWorld load_world(const std::string &path);

} // namespace incplan
