#pragma once

#include <vector>

#include "navbench/core_world.hpp"

namespace navbench {

constexpr double kSnapStartRadius = 0.5;

struct SnappedPath {
  std::vector<int> node_ids;         // consecutive duplicates collapsed
  std::vector<int> raw_assignments;  // one node id per input position
};

// Converts a continuous path to a nav-graph node sequence: starting from
// start_node, each position re-assigns the current node to the nearest member
// of {current} + adjacent(current) by horizontal distance, ties toward the
// smaller node id. Throws StartMismatch when positions[0] is more than 0.5m
// from the start node, and UnknownNodeId.
SnappedPath snap(const NavGraph& graph, int start_node, const std::vector<Vec3>& positions);

// Finds the graph node nearest to p (horizontal), ties toward smaller id.
int nearest_node(const NavGraph& graph, const Vec3& p);

struct SnapQuality {
  int oscillations = 0;          // A->B->A patterns in node_ids
  double mean_assignment_distance = 0.0;
  int far_positions = 0;         // positions > 1.5m from every graph node
};

SnapQuality snap_quality(const NavGraph& graph, const SnappedPath& snapped,
                         const std::vector<Vec3>& positions);

}  // namespace navbench
