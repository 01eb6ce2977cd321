#pragma once

#include <map>
#include <string>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/navigability.hpp"
#include "navbench/world_io.hpp"

namespace navbench {

constexpr double kRayDepth = 2.0;          // downward ray length, meters
constexpr double kRayInterval = 0.1;       // sampling interval along the ray
constexpr double kMaxDisplacement = 0.5;   // projection rejection threshold
constexpr double kDirectThreshold = 0.05;  // DIRECT vs ADJUSTED split

enum class ProjectionStatus { Direct, Adjusted, Invalid };
const char* projection_status_name(ProjectionStatus s);

struct ProjectionReport {
  int node_id = 0;
  ProjectionStatus status = ProjectionStatus::Invalid;
  double displacement = 0.0;  // horizontal, meters
  Vec3 projected;             // valid unless Invalid
};

// Projects a nav-graph node onto the navigable floor: samples the downward
// ray from node_pos every 0.1m over [0, 2]m, resolves each sample via
// nearest_navigable (max 0.5m), and keeps the hit with minimal horizontal
// displacement (ties toward the shallower sample).
ProjectionReport project_node(const OccupancyEnvironment& env, int node_id, const Vec3& node_pos);

enum class TrajectoryStatus { Navigable, InvalidNode, Disjoint };
const char* trajectory_status_name(TrajectoryStatus s);

struct LegResult {
  bool passed = false;
  double arrival_error = 0.0;  // final distance to the leg's target waypoint
};

struct VerifyResult {
  TrajectoryStatus status = TrajectoryStatus::Navigable;
  int failing_leg = -1;  // first failed leg, or -1
  std::vector<LegResult> legs;
};

// Replays follower legs between consecutive waypoints through the simulator;
// a leg passes iff the agent ends within 0.5m of the next waypoint. A single
// waypoint is vacuously navigable. Failures are data, not errors.
VerifyResult verify_trajectory(const OccupancyEnvironment& env, const std::vector<Vec3>& waypoints);
VerifyResult verify_trajectory(const Navigability& nav, const std::vector<Vec3>& waypoints);

struct TrajectoryReport {
  std::string trajectory_id;
  TrajectoryStatus status = TrajectoryStatus::Navigable;
  int failing_leg = -1;
  std::vector<ProjectionReport> nodes;
};

struct TransferReport {
  std::vector<TrajectoryReport> trajectories;
  std::map<int, ProjectionReport> node_reports;  // per unique node id
  // aggregate rates over unique nodes / trajectories
  double node_direct_rate = 0.0;
  double node_adjusted_rate = 0.0;
  double node_invalid_rate = 0.0;
  double mean_adjusted_displacement = 0.0;
  double trajectory_navigable_rate = 0.0;
  double trajectory_invalid_node_rate = 0.0;
  double trajectory_disjoint_rate = 0.0;
};

struct TransferResult {
  std::vector<Episode> episodes;
  TransferReport report;
};

// The full nav-graph -> continuous pipeline: applies overrides, projects all
// nodes, drops trajectories touching INVALID nodes, verifies the rest leg by
// leg, and emits one Episode per (navigable trajectory, instruction) with
// reference actions and geodesic reference length. Throws UnknownNodeId.
TransferResult transfer_dataset(
    const OccupancyEnvironment& env, const NavGraph& graph,
    const std::vector<GraphTrajectory>& trajectories,
    const std::map<std::string, std::vector<std::vector<int>>>& instructions,
    const std::map<int, Vec3>& overrides = {}, int threads = 1);

// Per-trajectory status lines plus aggregate percentages.
std::string transfer_report_text(const TransferReport& report);

struct DatasetStats {
  double mean_actions = 0.0;
  std::size_t min_actions = 0;
  std::size_t max_actions = 0;
  std::vector<std::size_t> action_histogram;  // bucket width 10 actions
  double mean_hop_length = 0.0;               // consecutive-waypoint distance
  std::size_t episode_count = 0;
  // filled when a TransferReport is supplied
  double mean_adjusted_displacement = 0.0;
  std::vector<std::size_t> displacement_histogram;  // bucket width 0.05m over [0, 0.5]
};

// Reference-action and hop-length summaries; throws EmptyDataset. The report
// overload adds node-displacement statistics over ADJUSTED projections.
DatasetStats dataset_stats(const std::vector<Episode>& episodes);
DatasetStats dataset_stats(const std::vector<Episode>& episodes, const TransferReport& report);

}  // namespace navbench
