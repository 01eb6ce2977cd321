#include "navbench/worldgen.hpp"

#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"
#include "navbench/rng.hpp"

namespace navbench {
namespace worldgen {

namespace {

int cell_floor(double meters, double cell_size) {
  return static_cast<int>(std::floor(meters / cell_size + 1e-9));
}

int cell_ceil(double meters, double cell_size) {
  return static_cast<int>(std::ceil(meters / cell_size - 1e-9));
}

}  // namespace

OccupancyEnvironment open_room(double width_m, double height_m, double cell_size) {
  const int w = cell_ceil(width_m, cell_size);
  const int h = cell_ceil(height_m, cell_size);
  OccupancyEnvironment env(cell_size, w, h);
  for (int iy = 0; iy < h; ++iy) {
    for (int ix = 0; ix < w; ++ix) {
      const bool border = ix == 0 || iy == 0 || ix == w - 1 || iy == h - 1;
      env.cell(ix, iy) = border ? Cell{CellKind::Obstacle, 0.0} : Cell{CellKind::Free, 0.0};
    }
  }
  return env;
}

void fill_rect(OccupancyEnvironment& env, double x0, double y0, double x1, double y1,
               CellKind kind, double floor_z) {
  const double cs = env.cell_size();
  const int ix0 = std::max(0, cell_floor(x0, cs));
  const int iy0 = std::max(0, cell_floor(y0, cs));
  const int ix1 = std::min(env.width(), cell_ceil(x1, cs));
  const int iy1 = std::min(env.height(), cell_ceil(y1, cs));
  for (int iy = iy0; iy < iy1; ++iy) {
    for (int ix = ix0; ix < ix1; ++ix) {
      env.cell(ix, iy) = Cell{kind, floor_z};
    }
  }
}

void fill_disk(OccupancyEnvironment& env, double cx, double cy, double radius, CellKind kind) {
  const double cs = env.cell_size();
  const int ix0 = std::max(0, cell_floor(cx - radius, cs));
  const int iy0 = std::max(0, cell_floor(cy - radius, cs));
  const int ix1 = std::min(env.width() - 1, cell_ceil(cx + radius, cs));
  const int iy1 = std::min(env.height() - 1, cell_ceil(cy + radius, cs));
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      const Vec2 c = env.cell_center(ix, iy);
      if (std::hypot(c.x - cx, c.y - cy) <= radius) env.cell(ix, iy).kind = kind;
    }
  }
}

OccupancyEnvironment random_obstacle_grid(int width_cells, int height_cells, double cell_size,
                                          double density, std::uint64_t seed) {
  OccupancyEnvironment env(cell_size, width_cells, height_cells);
  Rng rng(splitmix64(seed ^ 0x9d58UL));
  for (int iy = 0; iy < height_cells; ++iy) {
    for (int ix = 0; ix < width_cells; ++ix) {
      env.cell(ix, iy) =
          rng.uniform() < density ? Cell{CellKind::Obstacle, 0.0} : Cell{CellKind::Free, 0.0};
    }
  }
  return env;
}

// Corridor fixture geometry, all multiples of the 0.05m cell:
//   wall thickness 0.25, corridor width 1.5, end margins 1.0, hops 2.25.
namespace {

constexpr double kWall = 0.25;
constexpr double kCorridorWidth = 1.5;
constexpr double kMargin = 1.0;
constexpr double kHop = 2.25;
constexpr double kCameraHeight = 1.5;
constexpr double kTableDepth = 0.5;   // along x
constexpr double kTableWidth = 0.6;   // along y
constexpr double kHoleRadius = 0.7;

}  // namespace

std::vector<ChainPlan> plan_mix(int n_chains, int n_invalid, int n_disjoint, int n_adjusted,
                                std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0x70a7UL));
  std::vector<ChainPlan> plans(n_chains);
  for (ChainPlan& p : plans) p.n_nodes = 4 + static_cast<int>(rng.uniform_int(3));

  std::vector<int> order(n_chains);
  for (int i = 0; i < n_chains; ++i) order[i] = i;
  for (int i = n_chains - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(rng.uniform_int(i + 1))]);
  }
  int k = 0;
  const double deltas[3] = {0.10, 0.15, 0.20};
  for (int i = 0; i < n_invalid && k < n_chains; ++i, ++k) {
    ChainPlan& p = plans[order[k]];
    p.invalid_node = p.n_nodes / 2;
  }
  for (int i = 0; i < n_disjoint && k < n_chains; ++i, ++k) {
    ChainPlan& p = plans[order[k]];
    p.disjoint_leg = std::max(0, p.n_nodes / 2 - 1);
  }
  for (int i = 0; i < n_adjusted && k < n_chains; ++i, ++k) {
    ChainPlan& p = plans[order[k]];
    p.adjusted.emplace_back(p.n_nodes / 2, deltas[i % 3]);
  }
  return plans;
}

CorridorFixture make_corridor_fixture(const std::vector<ChainPlan>& plans, std::uint64_t seed,
                                      const std::string& id_prefix) {
  if (plans.empty()) throw EmptyInput("chain plans");
  int max_nodes = 2;
  for (const ChainPlan& p : plans) max_nodes = std::max(max_nodes, p.n_nodes);

  const double width_m = 2 * kWall + 2 * kMargin + (max_nodes - 1) * kHop;
  const double height_m = kWall + plans.size() * (kCorridorWidth + kWall);
  const double cs = 0.05;
  OccupancyEnvironment env(cs, cell_ceil(width_m, cs), cell_ceil(height_m, cs));
  // start solid, carve corridors
  fill_rect(env, 0, 0, width_m, height_m, CellKind::Obstacle);

  CorridorFixture fx{std::move(env), {}, {}, {}, {}, {}, {}};
  Rng rng(splitmix64(seed ^ 0xf1c2UL));
  int next_node_id = 0;

  for (std::size_t j = 0; j < plans.size(); ++j) {
    const ChainPlan& plan = plans[j];
    const double y0 = kWall + j * (kCorridorWidth + kWall);
    const double y1 = y0 + kCorridorWidth;
    const double yc = (y0 + y1) / 2.0;
    fill_rect(fx.env, kWall, y0, width_m - kWall, y1, CellKind::Free);

    GraphTrajectory traj;
    traj.id = id_prefix + std::to_string(j);
    std::vector<double> node_x(plan.n_nodes);
    for (int i = 0; i < plan.n_nodes; ++i) {
      node_x[i] = kWall + kMargin + i * kHop;
      const int id = next_node_id++;
      fx.graph.add_node(id, Vec3{node_x[i], yc, kCameraHeight});
      traj.node_ids.push_back(id);
      if (i > 0) fx.graph.add_edge(id - 1, id);
    }

    TrajectoryStatus expected = TrajectoryStatus::Navigable;
    int expected_leg = -1;
    if (plan.invalid_node >= 0) {
      fill_disk(fx.env, node_x[plan.invalid_node], yc, kHoleRadius, CellKind::Hole);
      expected = TrajectoryStatus::InvalidNode;
    } else if (plan.disjoint_leg >= 0) {
      const double xm = (node_x[plan.disjoint_leg] + node_x[plan.disjoint_leg + 1]) / 2.0;
      fill_rect(fx.env, xm - 0.125, y0, xm + 0.125, y1, CellKind::Obstacle);
      expected = TrajectoryStatus::Disjoint;
      expected_leg = plan.disjoint_leg;
    }
    for (const auto& [node_idx, delta] : plan.adjusted) {
      if (plan.invalid_node == node_idx) continue;
      const double a = node_x[node_idx] - delta;  // table's left edge, cell-aligned
      fill_rect(fx.env, a, yc - kTableWidth / 2.0, a + kTableDepth, yc + kTableWidth / 2.0,
                CellKind::Obstacle);
      // nearest navigable center sits at (a - 0.125, yc -+ 0.025); both rows
      // tie in distance and the tie-break keeps the smaller y index
      fx.expected_displacement[traj.node_ids[node_idx]] = std::hypot(delta + 0.125, 0.025);
    }

    fx.trajectories.push_back(traj);
    fx.expected_status.push_back(expected);
    fx.expected_failing_leg.push_back(expected_leg);

    const int n_instr = 1 + static_cast<int>(rng.uniform_int(3));
    for (int q = 0; q < n_instr; ++q) {
      std::vector<int> tokens(3 + rng.uniform_int(6));
      for (int& t : tokens) t = static_cast<int>(rng.uniform_int(1000));
      fx.instructions[traj.id].push_back(std::move(tokens));
    }
  }
  return fx;
}

}  // namespace worldgen
}  // namespace navbench
