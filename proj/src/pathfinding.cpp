#include "navbench/pathfinding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/navigability.hpp"
#include "navbench/simulator.hpp"

namespace navbench {

double MoveCost::meters(double cell_size) const {
  return straight * cell_size + diagonal * (cell_size * std::sqrt(2.0));
}

bool move_cost_less(const MoveCost& a, const MoveCost& b) {
  // a.s + a.d*sqrt2 < b.s + b.d*sqrt2  <=>  ds < m*sqrt2 with integer ds, m.
  const std::int64_t ds = static_cast<std::int64_t>(a.straight) - b.straight;
  const std::int64_t m = static_cast<std::int64_t>(b.diagonal) - a.diagonal;
  if (m == 0) return ds < 0;
  if (m > 0) {
    if (ds < 0) return true;
    return ds * ds < 2 * m * m;
  }
  if (ds >= 0) return false;
  return ds * ds > 2 * m * m;
}

namespace {

struct Dir {
  int dx, dy;
  bool diagonal;
};

constexpr Dir kDirs[8] = {{1, 0, false}, {-1, 0, false}, {0, 1, false},  {0, -1, false},
                          {1, 1, true},  {1, -1, true},  {-1, 1, true},  {-1, -1, true}};

MoveCost octile(int ax, int ay, int bx, int by) {
  const int dx = std::abs(ax - bx);
  const int dy = std::abs(ay - by);
  const int dmin = std::min(dx, dy);
  return MoveCost{dx + dy - 2 * dmin, dmin};
}

MoveCost add_move(MoveCost c, bool diagonal) {
  if (diagonal) {
    c.diagonal += 1;
  } else {
    c.straight += 1;
  }
  return c;
}

struct OpenEntry {
  MoveCost f;
  MoveCost h;
  std::int32_t idx;
  MoveCost g;  // snapshot for lazy-deletion check
};

struct WorseThan {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return move_cost_less(b.f, a.f);
    if (a.h != b.h) return move_cost_less(b.h, a.h);
    return a.idx > b.idx;
  }
};

struct SearchResult {
  bool reached = false;
  MoveCost cost;
  std::vector<std::int32_t> parent;  // valid only along the found path
  std::int32_t goal_idx = -1;
};

SearchResult astar(const Navigability& nav, int sx, int sy, int gx, int gy) {
  const int w = nav.env().width();
  const int h = nav.env().height();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<MoveCost> g_cost(n);
  std::vector<std::uint8_t> has_g(n, 0);
  std::vector<std::int32_t> parent(n, -1);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, WorseThan> open;

  const auto idx_of = [w](int x, int y) { return static_cast<std::int32_t>(y) * w + x; };
  const std::int32_t start = idx_of(sx, sy);
  const std::int32_t goal = idx_of(gx, gy);
  g_cost[start] = MoveCost{};
  has_g[start] = 1;
  open.push({octile(sx, sy, gx, gy), octile(sx, sy, gx, gy), start, MoveCost{}});

  SearchResult res;
  res.goal_idx = goal;
  while (!open.empty()) {
    const OpenEntry cur = open.top();
    open.pop();
    if (cur.g != g_cost[cur.idx]) continue;  // stale
    if (cur.idx == goal) {
      res.reached = true;
      res.cost = g_cost[goal];
      res.parent = std::move(parent);
      return res;
    }
    const int cx = cur.idx % w;
    const int cy = cur.idx / w;
    for (const Dir& d : kDirs) {
      const int nx = cx + d.dx;
      const int ny = cy + d.dy;
      if (!nav.cell_navigable(nx, ny)) continue;
      const MoveCost ng = add_move(g_cost[cur.idx], d.diagonal);
      const std::int32_t ni = idx_of(nx, ny);
      if (has_g[ni] && !move_cost_less(ng, g_cost[ni])) continue;
      g_cost[ni] = ng;
      has_g[ni] = 1;
      parent[ni] = cur.idx;
      const MoveCost nh = octile(nx, ny, gx, gy);
      open.push({MoveCost{ng.straight + nh.straight, ng.diagonal + nh.diagonal}, nh, ni, ng});
    }
  }
  return res;
}

GeodesicResult geodesic_impl(const Navigability& nav, const Vec3& from, const Vec3& to) {
  const OccupancyEnvironment& env = nav.env();
  if (!is_navigable(env, from)) throw FromNotNavigable();

  GeodesicResult out;
  const auto s = nav.snap_cell(from.xy());
  const auto g = nav.snap_cell(to.xy());
  if (!s || !g) return out;

  const auto search = astar(nav, s->first, s->second, g->first, g->second);
  if (!search.reached) return out;

  out.reachable = true;
  out.cost = search.cost;
  out.distance = search.cost.meters(env.cell_size());
  const int w = env.width();
  std::vector<Vec2> rev;
  for (std::int32_t i = search.goal_idx; i != -1; i = search.parent[i]) {
    rev.push_back(env.cell_center(i % w, i / w));
  }
  out.path.assign(rev.rbegin(), rev.rend());
  return out;
}

}  // namespace

GeodesicResult geodesic(const OccupancyEnvironment& env, const Vec3& from, const Vec3& to) {
  return geodesic_impl(Navigability(env), from, to);
}

GeodesicResult geodesic(const Navigability& nav, const Vec3& from, const Vec3& to) {
  return geodesic_impl(nav, from, to);
}

// ---------------------------------------------------------------------------
// DistanceField

DistanceField::DistanceField(const OccupancyEnvironment& env, const Vec3& goal)
    : DistanceField(Navigability(env), goal) {}

DistanceField::DistanceField(const Navigability& nav, const Vec3& goal)
    : nav_(nav),
      cost_(static_cast<std::size_t>(nav.env().width()) * nav.env().height()),
      settled_(cost_.size(), 0) {
  const auto g = nav_.snap_cell(goal.xy());
  if (!g) return;
  goal_resolved_ = true;

  const OccupancyEnvironment& env_ = nav_.env();
  const int w = env_.width();
  const auto idx_of = [w](int x, int y) { return static_cast<std::int32_t>(y) * w + x; };
  std::vector<std::uint8_t> has_g(cost_.size(), 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, WorseThan> open;
  const std::int32_t start = idx_of(g->first, g->second);
  cost_[start] = MoveCost{};
  has_g[start] = 1;
  open.push({MoveCost{}, MoveCost{}, start, MoveCost{}});
  while (!open.empty()) {
    const OpenEntry cur = open.top();
    open.pop();
    if (settled_[cur.idx]) continue;
    if (cur.g != cost_[cur.idx]) continue;
    settled_[cur.idx] = 1;
    const int cx = cur.idx % w;
    const int cy = cur.idx / w;
    for (const Dir& d : kDirs) {
      const int nx = cx + d.dx;
      const int ny = cy + d.dy;
      if (!nav.cell_navigable(nx, ny)) continue;
      const std::int32_t ni = idx_of(nx, ny);
      if (settled_[ni]) continue;
      const MoveCost ng = add_move(cost_[cur.idx], d.diagonal);
      if (has_g[ni] && !move_cost_less(ng, cost_[ni])) continue;
      cost_[ni] = ng;
      has_g[ni] = 1;
      open.push({ng, MoveCost{}, ni, ng});
    }
  }
  // keep only settled costs; unsettled entries stay unreachable
  for (std::size_t i = 0; i < cost_.size(); ++i) {
    if (!has_g[i]) settled_[i] = 0;
  }
}

std::optional<double> DistanceField::distance_to(const Vec3& p) const {
  if (!goal_resolved_) return std::nullopt;
  const auto c = nav_.snap_cell(p.xy());
  if (!c) return std::nullopt;
  const std::size_t i = static_cast<std::size_t>(c->second) * nav_.env().width() + c->first;
  if (!settled_[i]) return std::nullopt;
  return cost_[i].meters(nav_.env().cell_size());
}

// ---------------------------------------------------------------------------
// Follower

namespace {

std::optional<Action> follow_step_impl(const Navigability& nav, const Pose& pose,
                                       const Vec3& target, double goal_radius) {
  if (horizontal_distance(pose.position(), target) <= goal_radius) return std::nullopt;
  const GeodesicResult g = geodesic_impl(nav, pose.position(), target);
  if (!g.reachable) throw Unreachable();

  Vec2 carrot = g.path.back();
  for (const Vec2& p : g.path) {
    if (std::hypot(p.x - pose.x, p.y - pose.y) >= kForwardStep) {
      carrot = p;
      break;
    }
  }
  const double desired = wrap_degrees(std::atan2(carrot.y - pose.y, carrot.x - pose.x) / kDegToRad);
  const double diff = angle_difference(desired, pose.heading);
  if (std::abs(diff) > kTurnStep / 2.0) {
    return diff > 0 ? Action::TurnLeft : Action::TurnRight;
  }
  return Action::Forward;
}

FollowResult follow_path_impl(const Navigability& nav, const Pose& start, const Vec3& target,
                              double goal_radius) {
  const OccupancyEnvironment& env = nav.env();
  const GeodesicResult g0 = geodesic_impl(nav, start.position(), target);
  if (!g0.reachable) throw Unreachable();
  // cap = 2 * (ideal forward count + one full rotation of turns)
  const int cap =
      static_cast<int>(std::ceil(2.0 * (g0.distance / kForwardStep + 360.0 / kTurnStep)));

  SimState s = make_sim_state(env, start);
  FollowResult res;
  while (true) {
    const auto a = follow_step_impl(nav, s.pose, target, goal_radius);
    if (!a) break;
    if (static_cast<int>(res.actions.size()) >= cap) throw FollowerStuck(cap);
    s = step(env, s, *a);
    res.actions.push_back(*a);
  }
  res.final_pose = s.pose;
  return res;
}

}  // namespace

std::optional<Action> follow_step(const OccupancyEnvironment& env, const Pose& pose,
                                  const Vec3& target, double goal_radius) {
  return follow_step_impl(Navigability(env), pose, target, goal_radius);
}

std::optional<Action> follow_step(const Navigability& nav, const Pose& pose, const Vec3& target,
                                  double goal_radius) {
  return follow_step_impl(nav, pose, target, goal_radius);
}

FollowResult follow_path(const OccupancyEnvironment& env, const Pose& start, const Vec3& target,
                         double goal_radius) {
  return follow_path_impl(Navigability(env), start, target, goal_radius);
}

FollowResult follow_path(const Navigability& nav, const Pose& start, const Vec3& target,
                         double goal_radius) {
  return follow_path_impl(nav, start, target, goal_radius);
}

std::vector<Action> build_reference_actions(const OccupancyEnvironment& env,
                                            const std::vector<Vec3>& waypoints) {
  return build_reference_actions(Navigability(env), waypoints);
}

std::vector<Action> build_reference_actions(const Navigability& nav,
                                            const std::vector<Vec3>& waypoints) {
  if (waypoints.size() < 2) throw InvariantError("at least 2 waypoints");
  Pose cur{waypoints.front().x, waypoints.front().y, waypoints.front().z, 0.0};
  std::vector<Action> out;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    try {
      FollowResult leg = follow_path_impl(nav, cur, waypoints[i + 1], kWaypointRadius);
      out.insert(out.end(), leg.actions.begin(), leg.actions.end());
      cur = leg.final_pose;
    } catch (const Unreachable&) {
      throw LegUnreachable(static_cast<int>(i));
    } catch (const FollowerStuck&) {
      throw LegUnreachable(static_cast<int>(i));
    } catch (const StartNotNavigable&) {
      throw LegUnreachable(static_cast<int>(i));
    }
  }
  out.push_back(Action::Stop);
  return out;
}

}  // namespace navbench
