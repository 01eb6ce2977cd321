#pragma once

#include <string>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/pathfinding.hpp"

namespace navbench {

constexpr double kDefaultSuccessRadius = 3.0;

struct EpisodeMetrics {
  std::string episode_id;
  double tl = 0.0;        // trajectory length, meters
  double ne = 0.0;        // geodesic navigation error at termination, meters
  double ne_euclid = 0.0; // auxiliary straight-line navigation error
  double ndtw = 0.0;
  int os = 0;
  int sr = 0;
  double spl = 0.0;
  double dtw = 0.0;       // unnormalized alignment cost, meters
};

// Sum of horizontal displacements between consecutive poses.
double path_length(const Trajectory& traj);

// Geodesic distance from the final pose to the goal. Unreachable maps to the
// environment perimeter bound (>= any traversable distance).
double nav_error(const OccupancyEnvironment& env, const Trajectory& traj, const Vec3& goal);
double unreachable_sentinel(const OccupancyEnvironment& env);

struct SuccessOracle {
  int sr = 0;
  int os = 0;
};
// sr: agent issued STOP with geodesic(final, goal) <= radius. os: any pose
// along the trajectory came within radius.
SuccessOracle success_and_oracle(const OccupancyEnvironment& env, const Trajectory& traj,
                                 const Vec3& goal, double radius);

// sr * reference / max(tl, reference); throws NonpositiveReference.
double spl(int sr, double geodesic_reference_length, double tl);

struct DtwResult {
  double dtw = 0.0;
  double ndtw = 0.0;
};
// Monotone-alignment DP over horizontal point distances (match/insert/delete,
// unweighted); ndtw = exp(-dtw / (|reference| * radius)). Two-row table.
DtwResult ndtw(const std::vector<Pose>& poses, const std::vector<Vec3>& reference, double radius);

EpisodeMetrics evaluate(const OccupancyEnvironment& env, const Episode& episode,
                        const Trajectory& traj, double radius = kDefaultSuccessRadius);

// Batch evaluation: one shared navigability cache, one distance field per
// episode, episodes in parallel. Results are index-aligned with input.
std::vector<EpisodeMetrics> evaluate_dataset(const OccupancyEnvironment& env,
                                             const std::vector<Episode>& episodes,
                                             const std::vector<Trajectory>& trajectories,
                                             double radius = kDefaultSuccessRadius,
                                             int threads = 1);

// Unweighted per-column means in table order; throws EmptyDataset.
struct MeanMetrics {
  double tl = 0.0;
  double ne = 0.0;
  double ne_euclid = 0.0;
  double ndtw = 0.0;
  double os = 0.0;
  double sr = 0.0;
  double spl = 0.0;
  double dtw = 0.0;
  std::size_t count = 0;
};
MeanMetrics aggregate(const std::vector<EpisodeMetrics>& metrics);

// TSV report: header, one row per episode in input order, final MEAN row.
std::string metrics_table(const std::vector<EpisodeMetrics>& metrics);

}  // namespace navbench
