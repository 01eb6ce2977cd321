#include "navbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/parallel.hpp"

namespace navbench {

double path_length(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t i = 1; i < traj.poses.size(); ++i) {
    total += horizontal_distance(traj.poses[i - 1].xy(), traj.poses[i].xy());
  }
  return total;
}

double unreachable_sentinel(const OccupancyEnvironment& env) {
  return env.extent_x() + env.extent_y();
}

namespace {

double field_distance(const OccupancyEnvironment& env, const DistanceField& field, const Vec3& p) {
  return field.distance_to(p).value_or(unreachable_sentinel(env));
}

EpisodeMetrics evaluate_with_field(const OccupancyEnvironment& env, const DistanceField& field,
                                   const Episode& episode, const Trajectory& traj, double radius) {
  EpisodeMetrics m;
  m.episode_id = episode.id;
  m.tl = path_length(traj);
  const Pose& final_pose = traj.poses.back();
  m.ne = field_distance(env, field, final_pose.position());
  m.ne_euclid = horizontal_distance(final_pose.position(), episode.goal);

  const bool stopped = !traj.actions.empty() && traj.actions.back() == Action::Stop;
  m.sr = (stopped && m.ne <= radius) ? 1 : 0;
  m.os = 0;
  for (const Pose& p : traj.poses) {
    if (field_distance(env, field, p.position()) <= radius) {
      m.os = 1;
      break;
    }
  }
  m.spl = spl(m.sr, episode.geodesic_reference_length, m.tl);
  const DtwResult d = ndtw(traj.poses, episode.reference_waypoints, radius);
  m.dtw = d.dtw;
  m.ndtw = d.ndtw;
  return m;
}

}  // namespace

double nav_error(const OccupancyEnvironment& env, const Trajectory& traj, const Vec3& goal) {
  const GeodesicResult g = geodesic(env, traj.poses.back().position(), goal);
  return g.reachable ? g.distance : unreachable_sentinel(env);
}

SuccessOracle success_and_oracle(const OccupancyEnvironment& env, const Trajectory& traj,
                                 const Vec3& goal, double radius) {
  const DistanceField field(env, goal);
  SuccessOracle r;
  const bool stopped = !traj.actions.empty() && traj.actions.back() == Action::Stop;
  r.sr = (stopped && field_distance(env, field, traj.poses.back().position()) <= radius) ? 1 : 0;
  for (const Pose& p : traj.poses) {
    if (field_distance(env, field, p.position()) <= radius) {
      r.os = 1;
      break;
    }
  }
  return r;
}

double spl(int sr, double geodesic_reference_length, double tl) {
  if (!(geodesic_reference_length > 0.0)) throw NonpositiveReference();
  return sr * geodesic_reference_length / std::max(tl, geodesic_reference_length);
}

DtwResult ndtw(const std::vector<Pose>& poses, const std::vector<Vec3>& reference, double radius) {
  if (poses.empty()) throw EmptyInput("trajectory poses");
  if (reference.empty()) throw EmptyInput("reference waypoints");
  const std::size_t n = poses.size();
  const std::size_t m = reference.size();
  const double inf = std::numeric_limits<double>::infinity();

  // D[i][j] = d(i, j) + min(D[i-1][j], D[i][j-1], D[i-1][j-1]), two rows live.
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;  // virtual origin so D[1][1] = d(1, 1)
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      const double d = horizontal_distance(poses[i - 1].position(), reference[j - 1]);
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = d + best;
    }
    std::swap(prev, cur);
    prev[0] = inf;  // origin is only available for the first row
  }
  DtwResult r;
  r.dtw = prev[m];
  r.ndtw = std::exp(-r.dtw / (static_cast<double>(m) * radius));
  return r;
}

EpisodeMetrics evaluate(const OccupancyEnvironment& env, const Episode& episode,
                        const Trajectory& traj, double radius) {
  const DistanceField field(env, episode.goal);
  return evaluate_with_field(env, field, episode, traj, radius);
}

std::vector<EpisodeMetrics> evaluate_dataset(const OccupancyEnvironment& env,
                                             const std::vector<Episode>& episodes,
                                             const std::vector<Trajectory>& trajectories,
                                             double radius, int threads) {
  if (episodes.size() != trajectories.size())
    throw InvariantError("episodes and trajectories are index-aligned");
  if (episodes.empty()) throw EmptyDataset();
  const Navigability nav(env);
  std::vector<EpisodeMetrics> out(episodes.size());
  parallel_for(static_cast<std::int64_t>(episodes.size()), threads, [&](std::int64_t i) {
    const DistanceField field(nav, episodes[i].goal);
    out[i] = evaluate_with_field(env, field, episodes[i], trajectories[i], radius);
  });
  return out;
}

MeanMetrics aggregate(const std::vector<EpisodeMetrics>& metrics) {
  if (metrics.empty()) throw EmptyDataset();
  MeanMetrics mean;
  for (const EpisodeMetrics& m : metrics) {
    mean.tl += m.tl;
    mean.ne += m.ne;
    mean.ne_euclid += m.ne_euclid;
    mean.ndtw += m.ndtw;
    mean.os += m.os;
    mean.sr += m.sr;
    mean.spl += m.spl;
    mean.dtw += m.dtw;
  }
  const double n = static_cast<double>(metrics.size());
  mean.tl /= n;
  mean.ne /= n;
  mean.ne_euclid /= n;
  mean.ndtw /= n;
  mean.os /= n;
  mean.sr /= n;
  mean.spl /= n;
  mean.dtw /= n;
  mean.count = metrics.size();
  return mean;
}

namespace {

std::string fmt4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string metrics_table(const std::vector<EpisodeMetrics>& metrics) {
  if (metrics.empty()) throw EmptyDataset();
  std::string out = "episode\ttl\tne\tndtw\tos\tsr\tspl\tne_euclid\tdtw\n";
  double tl = 0, ne = 0, ndtw_sum = 0, os = 0, sr = 0, spl_sum = 0, nee = 0, dtw = 0;
  for (const EpisodeMetrics& m : metrics) {
    out += m.episode_id + "\t" + fmt4(m.tl) + "\t" + fmt4(m.ne) + "\t" + fmt4(m.ndtw) + "\t" +
           std::to_string(m.os) + "\t" + std::to_string(m.sr) + "\t" + fmt4(m.spl) + "\t" +
           fmt4(m.ne_euclid) + "\t" + fmt4(m.dtw) + "\n";
    tl += m.tl;
    ne += m.ne;
    ndtw_sum += m.ndtw;
    os += m.os;
    sr += m.sr;
    spl_sum += m.spl;
    nee += m.ne_euclid;
    dtw += m.dtw;
  }
  const double n = static_cast<double>(metrics.size());
  out += "MEAN\t" + fmt4(tl / n) + "\t" + fmt4(ne / n) + "\t" + fmt4(ndtw_sum / n) + "\t" +
         fmt4(os / n) + "\t" + fmt4(sr / n) + "\t" + fmt4(spl_sum / n) + "\t" + fmt4(nee / n) +
         "\t" + fmt4(dtw / n) + "\n";
  return out;
}

}  // namespace navbench
