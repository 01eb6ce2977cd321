#include <doctest.h>

#include <cmath>

#include "navbench/errors.hpp"
#include "navbench/harness.hpp"
#include "navbench/rng.hpp"
#include "navbench/simulator.hpp"
#include "navbench/world_io.hpp"
#include "navbench/worldgen.hpp"
#include "oracles.hpp"

using namespace navbench;

TEST_CASE("forward in open space advances exactly 0.25m") {
  const auto env = worldgen::open_room(4.0, 4.0);
  SimState s = make_sim_state(env, Pose{1.0, 1.0, 0.0, 0.0});
  s = step(env, s, Action::Forward);
  CHECK(s.pose.x == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(s.pose.y == 1.0);
  CHECK(s.pose.heading == 0.0);
  CHECK_FALSE(s.last_collided);
}

TEST_CASE("24 left turns return to the initial heading") {
  const auto env = worldgen::open_room(2.0, 2.0);
  SimState s = make_sim_state(env, Pose{1.0, 1.0, 0.0, 45.0});
  for (int i = 0; i < 24; ++i) {
    const double x = s.pose.x, y = s.pose.y;
    s = step(env, s, Action::TurnLeft);
    CHECK(s.pose.x == x);  // turns never move
    CHECK(s.pose.y == y);
  }
  CHECK(s.pose.heading == 45.0);
}

TEST_CASE("forward into a nearby wall truncates and collides") {
  auto env = worldgen::open_room(4.0, 4.0);
  worldgen::fill_rect(env, 2.0, 0.0, 2.5, 4.0, CellKind::Obstacle);
  // agent center 0.12m from the wall surface, facing it; contact at 0.10m
  const Pose start{1.88, 2.0, 0.0, 0.0};
  REQUIRE(is_navigable(env, start.position()));
  SimState s = make_sim_state(env, start);
  s = step(env, s, Action::Forward);
  CHECK(s.last_collided);
  const double travelled = s.pose.x - start.x;
  CHECK(travelled >= 0.01);
  CHECK(travelled <= 0.03);
  CHECK(travelled ==
        doctest::Approx(oracles::forward_travel_brute(env, start.x, start.y, 0.0)).epsilon(1e-12));
}

TEST_CASE("forward truncation matches the sampling oracle on random worlds") {
  Rng rng(555123);
  const auto env = worldgen::random_obstacle_grid(40, 40, 0.05, 0.15, 99);
  int moved = 0;
  for (int i = 0; i < 400; ++i) {
    const double x = rng.uniform(0.1, env.extent_x() - 0.1);
    const double y = rng.uniform(0.1, env.extent_y() - 0.1);
    const double heading = 15.0 * static_cast<double>(rng.uniform_int(24));
    const Vec3 p{x, y, env.floor_height(x, y).value_or(0.0)};
    if (!is_navigable(env, p)) continue;
    SimState s = make_sim_state(env, Pose{p.x, p.y, p.z, heading});
    s = step(env, s, Action::Forward);
    const double got = std::hypot(s.pose.x - p.x, s.pose.y - p.y);
    const double want = oracles::forward_travel_brute(env, p.x, p.y, heading);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
    CHECK(s.last_collided == (want < 0.25));
    CHECK(is_navigable(env, s.pose.position()));
    if (got > 0) ++moved;
  }
  CHECK(moved > 0);
}

TEST_CASE("run_actions stop-only trajectory") {
  const auto env = worldgen::open_room(2.0, 2.0);
  const Pose start{1.0, 1.0, 0.0, 30.0};
  const Trajectory t = run_actions(env, start, {Action::Stop});
  CHECK(t.actions.size() == 1);
  CHECK(t.poses.size() == 2);
  CHECK(t.poses.back().x == start.x);
  CHECK(t.poses.back().y == start.y);
  CHECK(t.poses.back().heading == start.heading);
}

TEST_CASE("run_actions truncates at the step limit") {
  const auto env = worldgen::open_room(5.5, 1.5);  // ~5m corridor
  std::vector<Action> actions(600, Action::Forward);
  const Trajectory t = run_actions(env, Pose{0.3, 0.75, 0.0, 0.0}, actions, 500);
  CHECK(t.actions.size() == 500);
  CHECK(t.poses.size() == 501);
}

TEST_CASE("run_actions requires a navigable start and non-empty actions") {
  const auto env = worldgen::open_room(2.0, 2.0);
  CHECK_THROWS_AS(run_actions(env, Pose{0.0, 0.0, 0.0, 0.0}, {Action::Stop}), StartNotNavigable);
  CHECK_THROWS_AS(run_actions(env, Pose{1.0, 1.0, 0.0, 0.0}, {}), InvariantError);
}

TEST_CASE("stepping a finished simulation throws") {
  const auto env = worldgen::open_room(2.0, 2.0);
  SimState s = make_sim_state(env, Pose{1.0, 1.0, 0.0, 0.0});
  s = step(env, s, Action::Stop);
  CHECK(s.done);
  CHECK_THROWS_AS(step(env, s, Action::Forward), SteppedAfterDone);
}

TEST_CASE("trajectories replay to identical pose sequences") {
  Rng rng(424242);
  auto env = worldgen::open_room(6.0, 6.0);
  worldgen::fill_rect(env, 2.5, 1.0, 3.0, 5.0, CellKind::Obstacle);
  auto policy = random_policy(7);
  Episode e;
  e.id = "replay";
  e.start = Pose{1.0, 1.0, 0.0, 0.0};
  e.goal = {5.0, 5.0, 0.0};
  e.reference_waypoints = {{1.0, 1.0, 0.0}, {5.0, 5.0, 0.0}};
  e.geodesic_reference_length = 1.0;
  const Trajectory t = run_policy(env, e, *policy, 200, 99);
  REQUIRE(!t.actions.empty());
  const Trajectory replay = run_actions(env, t.poses.front(), t.actions, 1 << 20);
  REQUIRE(replay.poses.size() == t.poses.size());
  for (std::size_t i = 0; i < t.poses.size(); ++i) {
    CHECK(replay.poses[i].x == t.poses[i].x);
    CHECK(replay.poses[i].y == t.poses[i].y);
    CHECK(replay.poses[i].heading == t.poses[i].heading);
  }
  // displacement bounds along the way
  for (std::size_t i = 0; i + 1 < t.poses.size(); ++i) {
    const double d = std::hypot(t.poses[i + 1].x - t.poses[i].x, t.poses[i + 1].y - t.poses[i].y);
    CHECK(d <= 0.25 + 1e-12);
    if (t.actions[i] != Action::Forward) CHECK(d == 0.0);
    if (t.collided[i]) CHECK(d < 0.25);
  }
}

TEST_CASE("run_policy with an immediately stopping policy") {
  const auto env = worldgen::open_room(2.0, 2.0);
  struct Stopper : Policy {
    void begin_episode(const Episode&, std::uint64_t) override {}
    Action act(const Observation&) override { return Action::Stop; }
    std::unique_ptr<Policy> clone() const override { return std::make_unique<Stopper>(*this); }
  } stopper;
  Episode e;
  e.id = "stop";
  e.start = Pose{1.0, 1.0, 0.0, 0.0};
  const Trajectory t = run_policy(env, e, stopper, 100, 0);
  CHECK(t.actions.size() == 1);
  CHECK(t.actions.front() == Action::Stop);
}

TEST_CASE("seeded random rollouts are byte-identical") {
  const auto env = worldgen::open_room(5.0, 5.0);
  Episode e;
  e.id = "det";
  e.start = Pose{2.5, 2.5, 0.0, 0.0};
  auto p1 = random_policy(3);
  auto p2 = random_policy(3);
  const Trajectory a = run_policy(env, e, *p1, 300, 17);
  const Trajectory b = run_policy(env, e, *p2, 300, 17);
  CHECK(serialize_trajectory(a, "x") == serialize_trajectory(b, "x"));
}
