#include "navbench/core_world.hpp"

#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"

namespace navbench {

char action_to_char(Action a) {
  switch (a) {
    case Action::Forward: return 'F';
    case Action::TurnLeft: return 'L';
    case Action::TurnRight: return 'R';
    case Action::Stop: return 'S';
  }
  return '?';
}

Action action_from_char(char c) {
  switch (c) {
    case 'F': return Action::Forward;
    case 'L': return Action::TurnLeft;
    case 'R': return Action::TurnRight;
    case 'S': return Action::Stop;
    default: throw IoError(std::string("unknown action glyph '") + c + "'");
  }
}

const char* action_name(Action a) {
  switch (a) {
    case Action::Forward: return "FORWARD";
    case Action::TurnLeft: return "TURN_LEFT";
    case Action::TurnRight: return "TURN_RIGHT";
    case Action::Stop: return "STOP";
  }
  return "UNKNOWN";
}

OccupancyEnvironment::OccupancyEnvironment(double cell_size, int width, int height,
                                           double agent_radius, double agent_height)
    : cell_size_(cell_size),
      width_(width),
      height_(height),
      agent_radius_(agent_radius),
      agent_height_(agent_height),
      cells_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0)) {
  if (!(cell_size_ > 0.0)) throw InvariantError("cell_size > 0");
  if (width_ <= 0 || height_ <= 0) throw InvariantError("width > 0 and height > 0");
  if (agent_radius_ < cell_size_) throw InvariantError("agent_radius >= cell_size");
}

namespace {

// Squared distance from (x, y) to the closed cell square (ix, iy).
double cell_clamp_dist_sq(const OccupancyEnvironment& env, double x, double y, int ix, int iy) {
  const double cs = env.cell_size();
  const double dx = std::max({ix * cs - x, 0.0, x - (ix + 1) * cs});
  const double dy = std::max({iy * cs - y, 0.0, y - (iy + 1) * cs});
  return dx * dx + dy * dy;
}

}  // namespace

bool OccupancyEnvironment::footprint_free(double x, double y) const {
  const double r = agent_radius_;
  const int ix_lo = cell_index_x(x - r);
  const int ix_hi = cell_index_x(x + r);
  const int iy_lo = cell_index_y(y - r);
  const int iy_hi = cell_index_y(y + r);
  const double r2 = r * r;
  double zmin = 0.0, zmax = 0.0;
  bool first = true;
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      if (cell_clamp_dist_sq(*this, x, y, ix, iy) > r2) continue;
      if (!in_bounds(ix, iy)) return false;
      const Cell& c = cell(ix, iy);
      if (c.kind != CellKind::Free) return false;
      if (first) {
        zmin = zmax = c.floor_z;
        first = false;
      } else {
        zmin = std::min(zmin, c.floor_z);
        zmax = std::max(zmax, c.floor_z);
      }
      if (zmax - zmin >= kFloorTolerance) return false;
    }
  }
  return !first;
}

std::optional<double> OccupancyEnvironment::floor_height(double x, double y) const {
  const int ix = cell_index_x(x);
  const int iy = cell_index_y(y);
  if (!in_bounds(ix, iy)) return std::nullopt;
  return cell(ix, iy).floor_z;
}

bool is_navigable(const OccupancyEnvironment& env, const Vec3& p) {
  const auto fz = env.floor_height(p.x, p.y);
  if (!fz) return false;
  if (std::abs(p.z - *fz) > OccupancyEnvironment::kFloorTolerance) return false;
  return env.footprint_free(p.x, p.y);
}

std::optional<Vec3> nearest_navigable(const OccupancyEnvironment& env, const Vec3& p,
                                      double max_disp) {
  if (is_navigable(env, p)) return p;

  const int ix_lo = std::max(0, env.cell_index_x(p.x - max_disp));
  const int ix_hi = std::min(env.width() - 1, env.cell_index_x(p.x + max_disp));
  const int iy_lo = std::max(0, env.cell_index_y(p.y - max_disp));
  const int iy_hi = std::min(env.height() - 1, env.cell_index_y(p.y + max_disp));

  bool found = false;
  double best_dist = 0.0;
  int best_ix = 0, best_iy = 0;
  // x-major scan: the first winner encountered realizes the
  // (smaller x, then smaller y) tie-break.
  for (int ix = ix_lo; ix <= ix_hi; ++ix) {
    for (int iy = iy_lo; iy <= iy_hi; ++iy) {
      const Vec2 c = env.cell_center(ix, iy);
      const double d = std::hypot(c.x - p.x, c.y - p.y);
      if (d > max_disp) continue;
      if (found && d >= best_dist) continue;
      if (!env.footprint_free(c.x, c.y)) continue;
      found = true;
      best_dist = d;
      best_ix = ix;
      best_iy = iy;
    }
  }
  if (!found) return std::nullopt;
  const Vec2 c = env.cell_center(best_ix, best_iy);
  return Vec3{c.x, c.y, env.cell(best_ix, best_iy).floor_z};
}

void NavGraph::add_node(int id, const Vec3& position) {
  if (index_.count(id)) throw InvariantError("node ids are unique");
  index_[id] = nodes_.size();
  nodes_.push_back(Node{id, position});
  adjacency_[id];
}

void NavGraph::add_edge(int a, int b) {
  if (a == b) throw InvariantError("no self-edges");
  if (!has_node(a)) throw UnknownNodeId(a);
  if (!has_node(b)) throw UnknownNodeId(b);
  const auto key = std::minmax(a, b);
  if (edges_.count({key.first, key.second})) return;
  edges_.insert({key.first, key.second});
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
}

const NavGraph::Node& NavGraph::node(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNodeId(id);
  return nodes_[it->second];
}

const std::vector<int>& NavGraph::neighbors(int id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw UnknownNodeId(id);
  return it->second;
}

}  // namespace navbench
