#include "navbench/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/parallel.hpp"
#include "navbench/pathfinding.hpp"
#include "navbench/simulator.hpp"

namespace navbench {

const char* projection_status_name(ProjectionStatus s) {
  switch (s) {
    case ProjectionStatus::Direct: return "DIRECT";
    case ProjectionStatus::Adjusted: return "ADJUSTED";
    case ProjectionStatus::Invalid: return "INVALID";
  }
  return "?";
}

const char* trajectory_status_name(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Navigable: return "NAVIGABLE";
    case TrajectoryStatus::InvalidNode: return "INVALID_NODE";
    case TrajectoryStatus::Disjoint: return "DISJOINT";
  }
  return "?";
}

ProjectionReport project_node(const OccupancyEnvironment& env, int node_id, const Vec3& node_pos) {
  ProjectionReport report;
  report.node_id = node_id;

  const int samples = static_cast<int>(std::lround(kRayDepth / kRayInterval));
  bool found = false;
  double best_disp = 0.0;
  Vec3 best_point;
  for (int k = 0; k <= samples; ++k) {
    const Vec3 sample{node_pos.x, node_pos.y, node_pos.z - k * kRayInterval};
    const auto hit = nearest_navigable(env, sample, kMaxDisplacement);
    if (!hit) continue;
    const double disp = horizontal_distance(*hit, node_pos);
    if (!found || disp < best_disp) {  // strict: ties keep the shallower sample
      found = true;
      best_disp = disp;
      best_point = *hit;
    }
  }
  if (!found) {
    report.status = ProjectionStatus::Invalid;
    return report;
  }
  report.displacement = best_disp;
  report.projected = best_point;
  report.status =
      best_disp <= kDirectThreshold ? ProjectionStatus::Direct : ProjectionStatus::Adjusted;
  return report;
}

namespace {

struct LegRun {
  TrajectoryStatus status = TrajectoryStatus::Navigable;
  int failing_leg = -1;
  std::vector<LegResult> legs;
  std::vector<Action> actions;  // concatenated leg actions, no STOP
};

// Walks every waypoint pair with the follower, replaying each leg through the
// simulator to measure arrival. Stops at the first failing leg.
LegRun run_legs(const Navigability& nav, const std::vector<Vec3>& waypoints) {
  LegRun run;
  if (waypoints.size() <= 1) return run;
  const OccupancyEnvironment& env = nav.env();
  Pose cur{waypoints.front().x, waypoints.front().y, waypoints.front().z, 0.0};
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    FollowResult leg;
    try {
      leg = follow_path(nav, cur, waypoints[i + 1], kWaypointRadius);
    } catch (const Error&) {
      run.status = TrajectoryStatus::Disjoint;
      run.failing_leg = static_cast<int>(i);
      run.legs.push_back(LegResult{false, 0.0});
      return run;
    }
    Pose end = cur;
    if (!leg.actions.empty()) {
      const Trajectory replay = run_actions(env, cur, leg.actions, 1 << 20);
      end = replay.poses.back();
    }
    const double err = horizontal_distance(end.position(), waypoints[i + 1]);
    const bool passed = err <= kWaypointRadius;
    run.legs.push_back(LegResult{passed, err});
    if (!passed) {
      run.status = TrajectoryStatus::Disjoint;
      run.failing_leg = static_cast<int>(i);
      return run;
    }
    run.actions.insert(run.actions.end(), leg.actions.begin(), leg.actions.end());
    cur = end;
  }
  return run;
}

}  // namespace

VerifyResult verify_trajectory(const OccupancyEnvironment& env, const std::vector<Vec3>& waypoints) {
  return verify_trajectory(Navigability(env), waypoints);
}

VerifyResult verify_trajectory(const Navigability& nav, const std::vector<Vec3>& waypoints) {
  const LegRun run = run_legs(nav, waypoints);
  return VerifyResult{run.status, run.failing_leg, run.legs};
}

TransferResult transfer_dataset(
    const OccupancyEnvironment& env, const NavGraph& graph,
    const std::vector<GraphTrajectory>& trajectories,
    const std::map<std::string, std::vector<std::vector<int>>>& instructions,
    const std::map<int, Vec3>& overrides, int threads) {
  // validate ids up front and collect the unique nodes in play
  std::set<int> used_ids;
  for (const GraphTrajectory& t : trajectories) {
    for (int id : t.node_ids) {
      graph.node(id);  // throws UnknownNodeId
      used_ids.insert(id);
    }
  }

  TransferResult result;
  const std::vector<int> id_list(used_ids.begin(), used_ids.end());
  std::vector<ProjectionReport> node_reports(id_list.size());
  parallel_for(static_cast<std::int64_t>(id_list.size()), threads, [&](std::int64_t i) {
    const int id = id_list[i];
    const auto ov = overrides.find(id);
    const Vec3 pos = ov != overrides.end() ? ov->second : graph.node(id).position;
    node_reports[i] = project_node(env, id, pos);
  });
  for (std::size_t i = 0; i < id_list.size(); ++i) {
    result.report.node_reports[id_list[i]] = node_reports[i];
  }

  const Navigability nav(env);
  struct PerTrajectory {
    TrajectoryReport report;
    std::vector<Episode> episodes;
  };
  std::vector<PerTrajectory> per(trajectories.size());

  parallel_for(static_cast<std::int64_t>(trajectories.size()), threads, [&](std::int64_t ti) {
    const GraphTrajectory& traj = trajectories[ti];
    PerTrajectory& out = per[ti];
    out.report.trajectory_id = traj.id;
    bool invalid = false;
    std::vector<Vec3> waypoints;
    for (int id : traj.node_ids) {
      const ProjectionReport& pr = result.report.node_reports.at(id);
      out.report.nodes.push_back(pr);
      if (pr.status == ProjectionStatus::Invalid) {
        invalid = true;
      } else {
        waypoints.push_back(pr.projected);
      }
    }
    if (invalid) {
      out.report.status = TrajectoryStatus::InvalidNode;
      return;
    }
    const LegRun run = run_legs(nav, waypoints);
    out.report.status = run.status;
    out.report.failing_leg = run.failing_leg;
    if (run.status != TrajectoryStatus::Navigable) return;

    std::vector<Action> reference = run.actions;
    reference.push_back(Action::Stop);
    const Vec3& start_wp = waypoints.front();
    const Vec3& goal_wp = waypoints.back();
    const GeodesicResult ref_geo = geodesic(nav, start_wp, goal_wp);
    const double ref_len = ref_geo.reachable ? ref_geo.distance : 0.0;
    // degenerate start==goal trajectories verify as navigable but cannot
    // satisfy the episode contract (positive reference length)
    if (!(ref_len > 0.0)) return;

    const auto instr_it = instructions.find(traj.id);
    const std::vector<std::vector<int>> instr_list =
        instr_it != instructions.end() ? instr_it->second
                                       : std::vector<std::vector<int>>{std::vector<int>{}};
    for (std::size_t k = 0; k < instr_list.size(); ++k) {
      Episode e;
      e.id = traj.id + "_" + std::to_string(k);
      e.instruction = instr_list[k];
      e.start = Pose{start_wp.x, start_wp.y, start_wp.z, 0.0};
      e.goal = goal_wp;
      e.reference_waypoints = waypoints;
      e.reference_actions = reference;
      e.geodesic_reference_length = ref_len;
      out.episodes.push_back(std::move(e));
    }
  });

  // deterministic assembly in input order
  std::size_t n_nav = 0, n_invalid = 0, n_disjoint = 0;
  for (PerTrajectory& p : per) {
    switch (p.report.status) {
      case TrajectoryStatus::Navigable: ++n_nav; break;
      case TrajectoryStatus::InvalidNode: ++n_invalid; break;
      case TrajectoryStatus::Disjoint: ++n_disjoint; break;
    }
    result.report.trajectories.push_back(std::move(p.report));
    for (Episode& e : p.episodes) result.episodes.push_back(std::move(e));
  }

  std::size_t direct = 0, adjusted = 0, invalid_nodes = 0;
  double adj_disp = 0.0;
  for (const auto& [id, pr] : result.report.node_reports) {
    switch (pr.status) {
      case ProjectionStatus::Direct: ++direct; break;
      case ProjectionStatus::Adjusted:
        ++adjusted;
        adj_disp += pr.displacement;
        break;
      case ProjectionStatus::Invalid: ++invalid_nodes; break;
    }
  }
  const double nn = std::max<std::size_t>(1, result.report.node_reports.size());
  result.report.node_direct_rate = direct / nn;
  result.report.node_adjusted_rate = adjusted / nn;
  result.report.node_invalid_rate = invalid_nodes / nn;
  result.report.mean_adjusted_displacement = adjusted ? adj_disp / adjusted : 0.0;
  const double nt = std::max<std::size_t>(1, trajectories.size());
  result.report.trajectory_navigable_rate = n_nav / nt;
  result.report.trajectory_invalid_node_rate = n_invalid / nt;
  result.report.trajectory_disjoint_rate = n_disjoint / nt;
  return result;
}

namespace {

std::string pct(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", rate * 100.0);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string transfer_report_text(const TransferReport& report) {
  std::string out;
  for (const TrajectoryReport& t : report.trajectories) {
    out += t.trajectory_id;
    out += ' ';
    out += trajectory_status_name(t.status);
    if (t.status == TrajectoryStatus::Disjoint) out += " " + std::to_string(t.failing_leg);
    out += '\n';
  }
  out += "# nodes " + std::to_string(report.node_reports.size()) + " direct " +
         pct(report.node_direct_rate) + " adjusted " + pct(report.node_adjusted_rate) +
         " invalid " + pct(report.node_invalid_rate) + " mean_adjusted_displacement " +
         fmt3(report.mean_adjusted_displacement) + "\n";
  out += "# trajectories " + std::to_string(report.trajectories.size()) + " navigable " +
         pct(report.trajectory_navigable_rate) + " invalid_node " +
         pct(report.trajectory_invalid_node_rate) + " disjoint " +
         pct(report.trajectory_disjoint_rate) + "\n";
  return out;
}

DatasetStats dataset_stats(const std::vector<Episode>& episodes) {
  if (episodes.empty()) throw EmptyDataset();
  DatasetStats stats;
  stats.episode_count = episodes.size();
  stats.min_actions = episodes.front().reference_actions.size();
  stats.max_actions = stats.min_actions;
  double total_actions = 0.0;
  double hop_total = 0.0;
  std::size_t hop_count = 0;
  for (const Episode& e : episodes) {
    const std::size_t n = e.reference_actions.size();
    total_actions += static_cast<double>(n);
    stats.min_actions = std::min(stats.min_actions, n);
    stats.max_actions = std::max(stats.max_actions, n);
    const std::size_t bucket = n / 10;
    if (stats.action_histogram.size() <= bucket) stats.action_histogram.resize(bucket + 1, 0);
    stats.action_histogram[bucket] += 1;
    for (std::size_t i = 1; i < e.reference_waypoints.size(); ++i) {
      hop_total += horizontal_distance(e.reference_waypoints[i - 1], e.reference_waypoints[i]);
      ++hop_count;
    }
  }
  stats.mean_actions = total_actions / static_cast<double>(episodes.size());
  stats.mean_hop_length = hop_count ? hop_total / static_cast<double>(hop_count) : 0.0;
  return stats;
}

DatasetStats dataset_stats(const std::vector<Episode>& episodes, const TransferReport& report) {
  DatasetStats stats = dataset_stats(episodes);
  stats.displacement_histogram.assign(10, 0);
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& [id, pr] : report.node_reports) {
    if (pr.status != ProjectionStatus::Adjusted) continue;
    total += pr.displacement;
    ++count;
    const std::size_t bucket =
        std::min<std::size_t>(9, static_cast<std::size_t>(pr.displacement / 0.05));
    stats.displacement_histogram[bucket] += 1;
  }
  stats.mean_adjusted_displacement = count ? total / static_cast<double>(count) : 0.0;
  return stats;
}

}  // namespace navbench
