#include <doctest.h>

#include <cmath>
#include <map>

#include "navbench/errors.hpp"
#include "navbench/harness.hpp"
#include "navbench/metrics.hpp"
#include "navbench/pathfinding.hpp"
#include "navbench/rng.hpp"
#include "navbench/simulator.hpp"
#include "navbench/transfer.hpp"
#include "navbench/world_io.hpp"
#include "navbench/worldgen.hpp"

using namespace navbench;

namespace {

Observation dummy_obs() {
  Observation obs;
  obs.pose = Pose{1.0, 1.0, 0.0, 0.0};
  return obs;
}

}  // namespace

TEST_CASE("random policy matches the action distribution within half a percent") {
  auto policy = random_policy(1234);
  Episode e;
  policy->begin_episode(e, 99);
  std::map<Action, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[policy->act(dummy_obs())]++;
  CHECK(std::abs(counts[Action::Forward] / double(n) - 0.68) <= 0.005);
  CHECK(std::abs(counts[Action::TurnLeft] / double(n) - 0.15) <= 0.005);
  CHECK(std::abs(counts[Action::TurnRight] / double(n) - 0.15) <= 0.005);
  CHECK(std::abs(counts[Action::Stop] / double(n) - 0.02) <= 0.005);
}

TEST_CASE("random policy is reproducible and geometric in episode length") {
  auto a = random_policy(7);
  auto b = random_policy(7);
  Episode e;
  a->begin_episode(e, 3);
  b->begin_episode(e, 3);
  for (int i = 0; i < 1000; ++i) CHECK(a->act(dummy_obs()) == b->act(dummy_obs()));

  // episode length (actions until and including STOP) ~ Geometric(0.02)
  auto p = random_policy(99);
  double total = 0.0;
  const int episodes = 10000;
  for (int i = 0; i < episodes; ++i) {
    p->begin_episode(e, i);
    int len = 0;
    while (true) {
      ++len;
      if (p->act(dummy_obs()) == Action::Stop) break;
    }
    total += len;
  }
  const double mean = total / episodes;
  CHECK(std::abs(mean - 50.0) <= 2.5);  // 5% of the analytic mean 1/0.02
}

TEST_CASE("handcrafted policy turns, runs 9.25m, stops") {
  const auto env = worldgen::open_room(24.0, 24.0);
  Episode e;
  e.id = "hc";
  e.start = Pose{12.0, 12.0, 0.0, 0.0};
  e.goal = {1.0, 1.0, 0.0};
  e.reference_waypoints = {{12.0, 12.0, 0.0}, {1.0, 1.0, 0.0}};
  e.geodesic_reference_length = 1.0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto policy = handcrafted_policy(seed);
    const Trajectory t = run_policy(env, e, *policy, 500, seed);
    CHECK(t.actions.size() <= 12 + 37 + 1);
    CHECK(t.actions.back() == Action::Stop);
    CHECK(path_length(t) == doctest::Approx(9.25).epsilon(1e-9));
    for (bool c : t.collided) CHECK_FALSE(c);
  }
}

TEST_CASE("handcrafted policy collides against a close wall and travels less") {
  auto env = worldgen::open_room(10.0, 10.0);
  worldgen::fill_rect(env, 5.6, 0.0, 6.0, 10.0, CellKind::Obstacle);
  Episode e;
  e.id = "hc_wall";
  e.start = Pose{5.0, 5.0, 0.0, 0.0};  // 0.5m from the wall face
  bool collided_somewhere = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto policy = handcrafted_policy(seed);
    const Trajectory t = run_policy(env, e, *policy, 500, seed);
    CHECK(path_length(t) <= 9.25 + 1e-9);
    for (bool c : t.collided) collided_somewhere |= c;
  }
  CHECK(collided_somewhere);
}

TEST_CASE("oracle policy succeeds with high SPL on fixture episodes") {
  auto plans = worldgen::plan_mix(6, 0, 0, 1, 53);
  auto fx = worldgen::make_corridor_fixture(plans, 53);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  REQUIRE(!result.episodes.empty());
  OraclePolicy oracle(fx.env);
  std::vector<Trajectory> trajs;
  for (const Episode& ep : result.episodes) {
    trajs.push_back(run_policy(fx.env, ep, oracle, 500, 0));
  }
  const auto metrics = evaluate_dataset(fx.env, result.episodes, trajs, 3.0);
  const MeanMetrics mean = aggregate(metrics);
  CHECK(mean.sr == 1.0);
  CHECK(mean.spl >= 0.9);
}

TEST_CASE("oracle policy makes progress from an off-path pose") {
  const auto env = worldgen::open_room(10.0, 10.0);
  Episode e;
  e.id = "perturb";
  e.start = Pose{2.0, 5.0, 0.0, 0.0};
  e.goal = {8.0, 5.0, 0.0};
  e.reference_waypoints = {{2.0, 5.0, 0.0}, {5.0, 5.0, 0.0}, {8.0, 5.0, 0.0}};
  e.geodesic_reference_length = 6.0;
  OraclePolicy oracle(env);
  oracle.begin_episode(e, 0);

  // 1m off the path
  SimState s = make_sim_state(env, Pose{3.0, 6.0, 0.0, 0.0});
  const Navigability nav(env);
  double prev = geodesic(nav, s.pose.position(), e.reference_waypoints[1]).distance;
  for (int i = 0; i < 10; ++i) {
    Observation obs;
    obs.episode = &e;
    obs.pose = s.pose;
    const Action a = oracle.act(obs);
    REQUIRE(a != Action::Stop);
    s = step(env, s, a);
    const double now = geodesic(nav, s.pose.position(), e.reference_waypoints[1]).distance;
    CHECK(now <= prev + 1e-9);
    prev = now;
  }
  CHECK(prev < 2.0);  // strictly closer than the starting 2.24m

  // within the arrival radius of the final waypoint: STOP
  SimState near_goal = make_sim_state(env, Pose{7.8, 5.0, 0.0, 0.0});
  Observation obs;
  obs.episode = &e;
  obs.pose = near_goal.pose;
  // consume intermediate waypoint first
  OraclePolicy fresh(env);
  fresh.begin_episode(e, 0);
  Observation mid;
  mid.episode = &e;
  mid.pose = Pose{5.0, 5.0, 0.0, 0.0};
  (void)fresh.act(mid);
  CHECK(fresh.act(obs) == Action::Stop);
}

TEST_CASE("inflection weights") {
  using A = Action;
  CHECK(inflection_weights({A::Forward, A::Forward, A::Forward}, 3.2) ==
        std::vector<double>{3.2, 1.0, 1.0});
  CHECK(inflection_weights({A::Forward, A::TurnLeft, A::Forward, A::Stop}, 3.2) ==
        std::vector<double>{3.2, 3.2, 3.2, 3.2});
  CHECK_THROWS_AS(inflection_weights({}, 3.2), EmptyInput);
  CHECK_THROWS_AS(inflection_weights({A::Stop}, 0.5), InvariantError);
}

TEST_CASE("inflection calibration identity on a fixture dataset") {
  auto plans = worldgen::plan_mix(5, 0, 0, 1, 61);
  auto fx = worldgen::make_corridor_fixture(plans, 61);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  const double f = inflection_frequency(result.episodes);
  REQUIRE(f > 0.0);
  const double coef = 1.0 / f;
  double weight_sum = 0.0;
  std::size_t n = 0;
  for (const Episode& e : result.episodes) {
    for (double w : inflection_weights(e.reference_actions, coef)) weight_sum += w;
    n += e.reference_actions.size();
  }
  const double mean = weight_sum / static_cast<double>(n);
  CHECK(std::abs(mean - (2.0 - f)) <= 1e-9);
}

TEST_CASE("progress targets") {
  CHECK(progress_targets(4) == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  CHECK(progress_targets(1) == std::vector<double>{1.0});
  const auto p = progress_targets(17);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
  CHECK(p.back() == 1.0);
  CHECK_THROWS_AS(progress_targets(0), EmptyInput);
}

TEST_CASE("dagger round 0 duplicates oracle rollouts") {
  auto plans = worldgen::plan_mix(3, 0, 0, 0, 71);
  auto fx = worldgen::make_corridor_fixture(plans, 71);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  auto random = random_policy(5);
  const DaggerRound round =
      dagger_collect(fx.env, result.episodes, *random, 0, 6, DaggerMode::Standard, 11, 500, 2);
  CHECK(round.beta == 1.0);
  REQUIRE(round.collected.size() == 6);
  OraclePolicy oracle(fx.env);
  for (const DaggerEpisode& de : round.collected) {
    const Episode* ep = nullptr;
    for (const Episode& e : result.episodes) {
      if (e.id == de.episode_id) ep = &e;
    }
    REQUIRE(ep != nullptr);
    const Trajectory want = run_policy(fx.env, *ep, oracle, 500, 0);
    CHECK(serialize_trajectory(de.trajectory, "h") == serialize_trajectory(want, "h"));
    for (const DaggerStep& s : de.steps) {
      CHECK(s.used_oracle);
      CHECK(s.executed == s.oracle);
    }
  }
}

TEST_CASE("dagger labels equal the oracle action at each visited pose") {
  auto plans = worldgen::plan_mix(2, 0, 0, 0, 83);
  auto fx = worldgen::make_corridor_fixture(plans, 83);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  auto random = random_policy(17);
  const DaggerRound round =
      dagger_collect(fx.env, result.episodes, *random, 2, 4, DaggerMode::Standard, 3, 120, 1);
  CHECK(round.beta == doctest::Approx(0.5625).epsilon(1e-12));
  OraclePolicy oracle(fx.env);
  for (const DaggerEpisode& de : round.collected) {
    const Episode* ep = nullptr;
    for (const Episode& e : result.episodes) {
      if (e.id == de.episode_id) ep = &e;
    }
    REQUIRE(ep != nullptr);
    oracle.begin_episode(*ep, 0);
    for (std::size_t t = 0; t < de.steps.size(); ++t) {
      Observation obs;
      obs.episode = ep;
      obs.pose = de.trajectory.poses[t];
      obs.step = static_cast<int>(t);
      const Action want = oracle.act(obs);
      CHECK(de.steps[t].oracle == want);
    }
  }
}

TEST_CASE("dagger finetune mode shifts the beta exponent") {
  auto plans = worldgen::plan_mix(2, 0, 0, 0, 97);
  auto fx = worldgen::make_corridor_fixture(plans, 97);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  auto random = random_policy(1);
  const DaggerRound r1 =
      dagger_collect(fx.env, result.episodes, *random, 1, 2, DaggerMode::Finetune, 5, 60, 1);
  CHECK(r1.beta == doctest::Approx(0.75 * 0.75).epsilon(1e-12));
}

TEST_CASE("dagger aggregation size is exact") {
  auto plans = worldgen::plan_mix(2, 0, 0, 0, 101);
  auto fx = worldgen::make_corridor_fixture(plans, 101);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  auto random = random_policy(2);
  DaggerDataset dataset;
  for (int n = 0; n <= 3; ++n) {
    dataset.append(
        dagger_collect(fx.env, result.episodes, *random, n, 20, DaggerMode::Standard, 5, 60, 2));
  }
  CHECK(dataset.total_trajectories() == 20 * 4);
  CHECK(dataset.rounds[2].beta == doctest::Approx(0.5625));
}

TEST_CASE("dagger training records carry weights and progress") {
  auto plans = worldgen::plan_mix(1, 0, 0, 0, 113);
  auto fx = worldgen::make_corridor_fixture(plans, 113);
  const auto result = transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions);
  auto random = random_policy(3);
  const DaggerRound round =
      dagger_collect(fx.env, result.episodes, *random, 0, 1, DaggerMode::Standard, 7, 60, 1);
  const std::string records = dagger_round_records(round, 3.2);
  CHECK(records.find("round 0 beta 1.0000000000 mode standard") == 0);
  CHECK(records.find("trajectory ") != std::string::npos);
  CHECK(records.find("step 0 ") != std::string::npos);
  CHECK(records.find(" 3.2 ") != std::string::npos);  // first step always inflects
}
