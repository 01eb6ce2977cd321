#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/navigability.hpp"

namespace navbench {

// Path cost on the 8-connected grid, kept as exact move counts so orderings
// and reported distances never depend on floating-point accumulation order.
// Value is straight*cell + diagonal*cell*sqrt(2).
struct MoveCost {
  std::int32_t straight = 0;
  std::int32_t diagonal = 0;

  double meters(double cell_size) const;
  bool operator==(const MoveCost& o) const = default;
};

// Exact comparison of straight_a + diagonal_a*sqrt(2) < straight_b + ... using
// integer arithmetic only.
bool move_cost_less(const MoveCost& a, const MoveCost& b);

struct GeodesicResult {
  bool reachable = false;
  double distance = 0.0;           // meters; meaningless when !reachable
  MoveCost cost;                   // exact form of distance
  std::vector<Vec2> path;          // cell-center polyline, start to goal
};

// Shortest 8-connected cell-center path under footprint navigability.
// Straight moves cost cell_size, diagonals cell_size*sqrt(2); octile
// heuristic; ties break on (f, h, cell index). Throws FromNotNavigable.
// The Navigability overloads reuse a prebuilt cache across many queries.
GeodesicResult geodesic(const OccupancyEnvironment& env, const Vec3& from, const Vec3& to);
GeodesicResult geodesic(const Navigability& nav, const Vec3& from, const Vec3& to);

// Single-source shortest-path field from `goal` to every navigable cell.
// One Dijkstra flood; lookups then cost O(1). distance_to() agrees exactly
// with geodesic() called per query.
class DistanceField {
 public:
  DistanceField(const OccupancyEnvironment& env, const Vec3& goal);
  DistanceField(const Navigability& nav, const Vec3& goal);

  // Geodesic distance from p to the field's goal; nullopt when unreachable.
  std::optional<double> distance_to(const Vec3& p) const;

  bool goal_resolved() const { return goal_resolved_; }

 private:
  Navigability nav_;
  std::vector<MoveCost> cost_;
  std::vector<std::uint8_t> settled_;
  bool goal_resolved_ = false;
};

// Greedy local planner: walks the geodesic polyline to `target` with 0.25m
// carrot lookahead and a 7.5-degree turn deadband, re-planning every step.
// Returns the actions taken (no trailing STOP) and the final pose. Throws
// Unreachable or FollowerStuck.
struct FollowResult {
  std::vector<Action> actions;
  Pose final_pose;
};
FollowResult follow_path(const OccupancyEnvironment& env, const Pose& start, const Vec3& target,
                         double goal_radius);
FollowResult follow_path(const Navigability& nav, const Pose& start, const Vec3& target,
                         double goal_radius);

// One greedy follower decision from `pose` toward `target`; nullopt when
// already within goal_radius. Reused by the oracle policy so teacher actions
// stay correct from off-distribution poses.
std::optional<Action> follow_step(const OccupancyEnvironment& env, const Pose& pose,
                                  const Vec3& target, double goal_radius);
std::optional<Action> follow_step(const Navigability& nav, const Pose& pose, const Vec3& target,
                                  double goal_radius);

// Concatenates follow_path legs over consecutive waypoints (0.5m arrival
// radius per leg) and appends STOP. Throws LegUnreachable with the failing
// leg index.
std::vector<Action> build_reference_actions(const OccupancyEnvironment& env,
                                            const std::vector<Vec3>& waypoints);
std::vector<Action> build_reference_actions(const Navigability& nav,
                                            const std::vector<Vec3>& waypoints);

constexpr double kWaypointRadius = 0.5;  // arrival radius between waypoints

}  // namespace navbench
