#include "incplan/svg_trace.hpp"

#include <sstream>

namespace incplan {

namespace {
constexpr double kCanvas = 800.0;
} // namespace

double trace_svg_scale(const GlobalWorld &world) {
    return kCanvas / (world.bounds.max.x - world.bounds.min.x);
}

std::string trace_svg(const GlobalWorld &world, double sensor_range,
                      const std::vector<TrialRow> &rows, bool show_sensing) {
    const double scale = trace_svg_scale(world);
    const double height = (world.bounds.max.y - world.bounds.min.y) * scale;
    const auto px = [&](double x) { return (x - world.bounds.min.x) * scale; };
    const auto py = [&](double y) { return height - (y - world.bounds.min.y) * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kCanvas << " " << height
        << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << height
        << "\" fill=\"white\" stroke=\"black\"/>\n";

    for (const AxisRect &o : world.obstacles) {
        svg << "<rect class=\"obstacle\" x=\"" << px(o.min.x) << "\" y=\"" << py(o.max.y)
            << "\" width=\"" << o.width() * scale << "\" height=\"" << o.height() * scale
            << "\" fill=\"#444444\"/>\n";
    }

    if (show_sensing) {
        // One sensing ball per query: sensing always happens at the state the
        // query is issued from.
        for (const TrialRow &row : rows) {
            for (const QueryRecord &q : row.query_records) {
                svg << "<circle class=\"sensed\" cx=\"" << px(q.from.x) << "\" cy=\""
                    << py(q.from.y) << "\" r=\"" << sensor_range * scale
                    << "\" fill=\"#a0c8f0\" fill-opacity=\"0.25\" stroke=\"#6699cc\"/>\n";
            }
        }
    }

    // One polyline per trial; the hue walks around the color wheel in run
    // order so overlapping attempts stay distinguishable.
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const Path executed = row_executed_path(rows[t], world.start);
        const auto &pts = executed.waypoints();
        if (pts.size() < 2) {
            continue;
        }
        const int hue = static_cast<int>(360.0 * static_cast<double>(t) /
                                         static_cast<double>(rows.size()));
        svg << "<polyline class=\"executed\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0) {
                svg << ' ';
            }
            svg << px(pts[i].x) << ',' << py(pts[i].y);
        }
        svg << "\" fill=\"none\" stroke=\"hsl(" << hue
            << ",80%,45%)\" stroke-width=\"2\"/>\n";
    }

    svg << "<circle class=\"start\" cx=\"" << px(world.start.x) << "\" cy=\"" << py(world.start.y)
        << "\" r=\"5\" fill=\"#33aa33\"/>\n";
    svg << "<circle class=\"goal\" cx=\"" << px(world.goal.x) << "\" cy=\"" << py(world.goal.y)
        << "\" r=\"5\" fill=\"#aa33aa\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::string trace_svg(const GlobalWorld &world, double sensor_range, const TrialRow &row) {
    return trace_svg(world, sensor_range, std::vector<TrialRow>{row}, true);
}

} // namespace incplan
