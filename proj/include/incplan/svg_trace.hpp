#pragma once

#include <string>
#include <vector>

#include "incplan/records.hpp"
#include "incplan/world.hpp"

namespace incplan {

/// Vector image of executed trials: workspace bounds, obstacles, one
/// polyline per trial's executed global path (hue encodes run order), and
/// start/goal markers. With `show_sensing`, the sensing balls (one per query
/// start) are drawn too — intended for single-trial renders. The world
/// x-range maps linearly onto [0, 800] pixels and y is flipped so +y points
/// up on screen.
std::string trace_svg(const GlobalWorld &world, double sensor_range,
                      const std::vector<TrialRow> &rows, bool show_sensing);

/// Single-trial convenience wrapper; draws the sensing balls.
std::string trace_svg(const GlobalWorld &world, double sensor_range, const TrialRow &row);

/// Pixel scale used by trace_svg: world units times this value, after
/// shifting by the bounds minimum (and flipping y).
double trace_svg_scale(const GlobalWorld &world);

} // namespace incplan
