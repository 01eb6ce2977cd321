#include "navbench/reference.hpp"

#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/pathfinding.hpp"

namespace navbench {
namespace ref {

DtwResult ndtw(const std::vector<Pose>& poses, const std::vector<Vec3>& reference, double radius) {
  if (poses.empty()) throw EmptyInput("trajectory poses");
  if (reference.empty()) throw EmptyInput("reference waypoints");
  const std::size_t n = poses.size();
  const std::size_t m = reference.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(m + 1, inf));
  table[0][0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double d = horizontal_distance(poses[i - 1].position(), reference[j - 1]);
      table[i][j] = d + std::min({table[i - 1][j], table[i][j - 1], table[i - 1][j - 1]});
    }
  }
  DtwResult r;
  r.dtw = table[n][m];
  r.ndtw = std::exp(-r.dtw / (static_cast<double>(m) * radius));
  return r;
}

namespace {

double geodesic_or_sentinel(const OccupancyEnvironment& env, const Vec3& from, const Vec3& to) {
  const GeodesicResult g = geodesic(env, from, to);
  return g.reachable ? g.distance : unreachable_sentinel(env);
}

}  // namespace

EpisodeMetrics evaluate(const OccupancyEnvironment& env, const Episode& episode,
                        const Trajectory& traj, double radius) {
  EpisodeMetrics m;
  m.episode_id = episode.id;
  m.tl = path_length(traj);
  const Pose& final_pose = traj.poses.back();
  m.ne = geodesic_or_sentinel(env, final_pose.position(), episode.goal);
  m.ne_euclid = horizontal_distance(final_pose.position(), episode.goal);
  const bool stopped = !traj.actions.empty() && traj.actions.back() == Action::Stop;
  m.sr = (stopped && m.ne <= radius) ? 1 : 0;
  for (const Pose& p : traj.poses) {
    if (geodesic_or_sentinel(env, p.position(), episode.goal) <= radius) {
      m.os = 1;
      break;
    }
  }
  m.spl = spl(m.sr, episode.geodesic_reference_length, m.tl);
  const DtwResult d = ref::ndtw(traj.poses, episode.reference_waypoints, radius);
  m.dtw = d.dtw;
  m.ndtw = d.ndtw;
  return m;
}

std::vector<EpisodeMetrics> evaluate_dataset(const OccupancyEnvironment& env,
                                             const std::vector<Episode>& episodes,
                                             const std::vector<Trajectory>& trajectories,
                                             double radius) {
  if (episodes.size() != trajectories.size())
    throw InvariantError("episodes and trajectories are index-aligned");
  if (episodes.empty()) throw EmptyDataset();
  std::vector<EpisodeMetrics> out;
  out.reserve(episodes.size());
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    out.push_back(ref::evaluate(env, episodes[i], trajectories[i], radius));
  }
  return out;
}

}  // namespace ref
}  // namespace navbench
