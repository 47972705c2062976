#pragma once

#include "incplan/budget.hpp"
#include "incplan/geometry.hpp"
#include "incplan/random.hpp"
#include "incplan/world.hpp"

namespace incplan {

/// Randomized shortcutting: repeatedly samples two parameters along the
/// path and replaces the stretch between them with a straight segment when
/// the view allows it. Consumes the tracker until it expires; one attempt is
/// one budget unit. The result never gets longer and keeps the endpoints.
Path shortcut_smooth(const Path &path, const IncrementalView &view, RandomStream &rng,
                     BudgetTracker &tracker);

} // namespace incplan
