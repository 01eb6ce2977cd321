#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "navbench/geometry.hpp"

namespace navbench {

enum class Action : std::uint8_t { Forward = 0, TurnLeft = 1, TurnRight = 2, Stop = 3 };

char action_to_char(Action a);
Action action_from_char(char c);  // throws ParseError-style IoError on unknown glyph
const char* action_name(Action a);

// Agent state. heading is degrees counterclockwise from +x, in [0, 360);
// it stays an exact multiple of 15 under simulator actions. z tracks the
// floor height of the occupied cell.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double heading = 0.0;

  Vec2 xy() const { return {x, y}; }
  Vec3 position() const { return {x, y, z}; }
};

enum class CellKind : std::uint8_t { Free = 0, Obstacle = 1, Hole = 2 };

struct Cell {
  CellKind kind = CellKind::Free;
  double floor_z = 0.0;
};

// 2.5D grid world: per-cell free/obstacle/hole flags plus a floor height.
// The continuous space agents move through; immutable after load.
class OccupancyEnvironment {
 public:
  // Maximum floor-height step allowed under the agent footprint (meters).
  static constexpr double kFloorTolerance = 0.02;

  OccupancyEnvironment(double cell_size, int width, int height,
                       double agent_radius = 0.10, double agent_height = 1.5);

  double cell_size() const { return cell_size_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double agent_radius() const { return agent_radius_; }
  double agent_height() const { return agent_height_; }

  bool in_bounds(int ix, int iy) const {
    return ix >= 0 && ix < width_ && iy >= 0 && iy < height_;
  }
  const Cell& cell(int ix, int iy) const { return cells_[static_cast<std::size_t>(iy) * width_ + ix]; }
  Cell& cell(int ix, int iy) { return cells_[static_cast<std::size_t>(iy) * width_ + ix]; }

  int cell_index_x(double x) const { return static_cast<int>(std::floor(x / cell_size_)); }
  int cell_index_y(double y) const { return static_cast<int>(std::floor(y / cell_size_)); }
  Vec2 cell_center(int ix, int iy) const {
    return {(ix + 0.5) * cell_size_, (iy + 0.5) * cell_size_};
  }

  // Footprint test at the cell-resolution floor: true iff every cell touched
  // by the agent-radius disk at (x, y) is FREE and their floor heights span
  // less than kFloorTolerance. Out of bounds is never navigable.
  bool footprint_free(double x, double y) const;

  // Floor height under (x, y); nullopt when out of bounds.
  std::optional<double> floor_height(double x, double y) const;

  double extent_x() const { return width_ * cell_size_; }
  double extent_y() const { return height_ * cell_size_; }

 private:
  double cell_size_;
  int width_;
  int height_;
  double agent_radius_;
  double agent_height_;
  std::vector<Cell> cells_;
};

// True iff the agent disk at (p.x, p.y) touches only FREE cells with
// consistent floor heights and p.z is within tolerance of the occupied
// cell's floor. Out-of-bounds points are valid inputs and return false.
bool is_navigable(const OccupancyEnvironment& env, const Vec3& p);

// Navigable point minimizing horizontal distance to p: p itself when it
// qualifies, otherwise the best cell-center candidate within max_disp.
// Candidate ties break toward the smaller x index, then smaller y index.
std::optional<Vec3> nearest_navigable(const OccupancyEnvironment& env, const Vec3& p,
                                      double max_disp);

// Panorama-style topological graph: nodes with 3D positions, undirected
// navigability edges.
class NavGraph {
 public:
  struct Node {
    int id = 0;
    Vec3 position;
  };

  void add_node(int id, const Vec3& position);
  void add_edge(int a, int b);  // rejects self-edges and unknown endpoints

  bool has_node(int id) const { return index_.count(id) != 0; }
  const Node& node(int id) const;
  const std::vector<int>& neighbors(int id) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

 private:
  std::vector<Node> nodes_;
  std::map<int, std::size_t> index_;
  std::map<int, std::vector<int>> adjacency_;
  std::set<std::pair<int, int>> edges_;  // stored with first < second
};

// One instruction-following task. Instruction tokens are opaque ids.
struct Episode {
  std::string id;
  std::vector<int> instruction;
  Pose start;
  Vec3 goal;  // 2D point + floor_z
  std::vector<Vec3> reference_waypoints;
  std::vector<Action> reference_actions;
  double geodesic_reference_length = 0.0;
};

// Executed result: poses.size() == actions.size() + 1 and
// collided.size() == actions.size().
struct Trajectory {
  std::string episode_id;
  std::vector<Pose> poses;
  std::vector<Action> actions;
  std::vector<bool> collided;
};

}  // namespace navbench
