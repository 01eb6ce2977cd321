#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/transfer.hpp"
#include "navbench/world_io.hpp"

namespace navbench {
namespace worldgen {

// Open floor with a border wall; dimensions in meters.
OccupancyEnvironment open_room(double width_m, double height_m, double cell_size = 0.05);

// Marks every cell whose square intersects [x0,x1)x[y0,y1) (meters).
void fill_rect(OccupancyEnvironment& env, double x0, double y0, double x1, double y1,
               CellKind kind, double floor_z = 0.0);

// Marks every cell whose center lies within radius of (cx, cy).
void fill_disk(OccupancyEnvironment& env, double cx, double cy, double radius, CellKind kind);

// Bernoulli obstacle grid with a clear border ring; for search stress tests.
OccupancyEnvironment random_obstacle_grid(int width_cells, int height_cells, double cell_size,
                                          double density, std::uint64_t seed);

// One chain corridor per trajectory, with optional planted failures.
struct ChainPlan {
  int n_nodes = 5;
  int invalid_node = -1;  // chain-local node index projected onto a hole
  int disjoint_leg = -1;  // leg blocked by a full-width wall
  std::vector<std::pair<int, double>> adjusted;  // (node index, inset depth into a table)
};

struct CorridorFixture {
  OccupancyEnvironment env;
  NavGraph graph;
  std::vector<GraphTrajectory> trajectories;
  std::map<std::string, std::vector<std::vector<int>>> instructions;
  // planted ground truth, aligned with `trajectories`
  std::vector<TrajectoryStatus> expected_status;
  std::vector<int> expected_failing_leg;
  std::map<int, double> expected_displacement;  // node id -> exact planted displacement
};

// Builds a stack of closed corridors (one per plan), a chain nav-graph along
// each corridor centerline (2.25m hops, nodes at camera height 1.5m), and the
// planted defects. Trajectory ids are "<prefix><index>"; instructions are 1-3
// random token lines per trajectory.
CorridorFixture make_corridor_fixture(const std::vector<ChainPlan>& plans, std::uint64_t seed,
                                      const std::string& id_prefix = "traj");

// Seeded plan mix: n_chains trajectories, 4-6 nodes each, with the requested
// number of invalid nodes, disjoint legs, and adjusted nodes spread across
// distinct chains.
std::vector<ChainPlan> plan_mix(int n_chains, int n_invalid, int n_disjoint, int n_adjusted,
                                std::uint64_t seed);

}  // namespace worldgen
}  // namespace navbench
