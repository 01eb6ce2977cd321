#pragma once

#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/metrics.hpp"

namespace navbench {
namespace ref {

// Serial reference implementations of the optimized kernels. These trade
// speed for directness and are kept as the comparison baseline for tests and
// the benchmark binary.

// Full-table alignment DP, O(n*m) memory, against metrics.cpp's two-row form.
DtwResult ndtw(const std::vector<Pose>& poses, const std::vector<Vec3>& reference, double radius);

// Per-query A* for every distance (no shared navigability cache, no distance
// field), one episode at a time.
EpisodeMetrics evaluate(const OccupancyEnvironment& env, const Episode& episode,
                        const Trajectory& traj, double radius);
std::vector<EpisodeMetrics> evaluate_dataset(const OccupancyEnvironment& env,
                                             const std::vector<Episode>& episodes,
                                             const std::vector<Trajectory>& trajectories,
                                             double radius);

}  // namespace ref
}  // namespace navbench
