#pragma once

#include <string>

#include "navbench/core_world.hpp"

namespace navbench {

// Top-down maps of an environment with an optional reference path and
// executed trajectory, in the style of qualitative trajectory figures.
// Rows are printed with +y upward.
std::string render_ascii(const OccupancyEnvironment& env, const Episode* episode,
                         const Trajectory* traj);

// Plain-text PGM (P2), one pixel per cell: free shades by floor height,
// obstacles black, holes dark, waypoints/trajectory/start/goal in distinct
// gray levels.
std::string render_pgm(const OccupancyEnvironment& env, const Episode* episode,
                       const Trajectory* traj);

}  // namespace navbench
