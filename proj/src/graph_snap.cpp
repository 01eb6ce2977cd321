#include "navbench/graph_snap.hpp"

#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"

namespace navbench {

SnappedPath snap(const NavGraph& graph, int start_node, const std::vector<Vec3>& positions) {
  if (positions.empty()) throw EmptyInput("positions");
  const NavGraph::Node& start = graph.node(start_node);  // throws UnknownNodeId
  if (horizontal_distance(positions.front(), start.position) > kSnapStartRadius)
    throw StartMismatch();

  SnappedPath out;
  int current = start_node;
  out.raw_assignments.push_back(current);
  out.node_ids.push_back(current);
  for (std::size_t t = 1; t < positions.size(); ++t) {
    // candidate set: the current node plus its graph neighbors
    std::vector<int> candidates = graph.neighbors(current);
    candidates.push_back(current);
    std::sort(candidates.begin(), candidates.end());
    int best = current;
    double best_dist = 0.0;
    bool first = true;
    for (int id : candidates) {
      const double d = horizontal_distance(positions[t], graph.node(id).position);
      if (first || d < best_dist) {  // ascending-id scan makes ties keep the smaller id
        first = false;
        best = id;
        best_dist = d;
      }
    }
    current = best;
    out.raw_assignments.push_back(current);
    if (out.node_ids.back() != current) out.node_ids.push_back(current);
  }
  return out;
}

int nearest_node(const NavGraph& graph, const Vec3& p) {
  if (graph.nodes().empty()) throw EmptyInput("graph nodes");
  bool first = true;
  int best = 0;
  double best_dist = 0.0;
  for (const NavGraph::Node& n : graph.nodes()) {
    const double d = horizontal_distance(p, n.position);
    if (first || d < best_dist || (d == best_dist && n.id < best)) {
      first = false;
      best = n.id;
      best_dist = d;
    }
  }
  return best;
}

SnapQuality snap_quality(const NavGraph& graph, const SnappedPath& snapped,
                         const std::vector<Vec3>& positions) {
  SnapQuality q;
  for (std::size_t i = 2; i < snapped.node_ids.size(); ++i) {
    if (snapped.node_ids[i] == snapped.node_ids[i - 2] &&
        snapped.node_ids[i] != snapped.node_ids[i - 1]) {
      ++q.oscillations;
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < positions.size() && t < snapped.raw_assignments.size(); ++t) {
    total += horizontal_distance(positions[t], graph.node(snapped.raw_assignments[t]).position);
    double nearest = horizontal_distance(positions[t], graph.nodes().front().position);
    for (const NavGraph::Node& n : graph.nodes()) {
      nearest = std::min(nearest, horizontal_distance(positions[t], n.position));
    }
    if (nearest > 1.5) ++q.far_positions;
  }
  if (!positions.empty()) q.mean_assignment_distance = total / static_cast<double>(positions.size());
  return q;
}

}  // namespace navbench
