#include "navbench/simulator.hpp"

#include <cmath>
#include <string>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/policy.hpp"
#include "navbench/world_io.hpp"

namespace navbench {

SimState make_sim_state(const OccupancyEnvironment& env, const Pose& start) {
  if (!is_navigable(env, start.position())) throw StartNotNavigable();
  SimState s;
  s.pose = start;
  s.pose.heading = wrap_degrees(start.heading);
  return s;
}

namespace {

Pose advance(const OccupancyEnvironment& env, const Pose& from, double distance) {
  const double rad = from.heading * kDegToRad;
  Pose p = from;
  p.x = from.x + distance * std::cos(rad);
  p.y = from.y + distance * std::sin(rad);
  p.z = env.floor_height(p.x, p.y).value_or(from.z);
  return p;
}

}  // namespace

SimState step(const OccupancyEnvironment& env, const SimState& s, Action a) {
  if (s.done) throw SteppedAfterDone();
  SimState next = s;
  next.steps_taken = s.steps_taken + 1;
  next.last_collided = false;

  switch (a) {
    case Action::TurnLeft:
      next.pose.heading = wrap_degrees(s.pose.heading + kTurnStep);
      break;
    case Action::TurnRight:
      next.pose.heading = wrap_degrees(s.pose.heading - kTurnStep);
      break;
    case Action::Stop:
      next.done = true;
      break;
    case Action::Forward: {
      const int samples = static_cast<int>(std::lround(kForwardStep / kCollisionSample));
      double reached = 0.0;
      for (int i = 1; i <= samples; ++i) {
        const double t = (i == samples) ? kForwardStep : i * kCollisionSample;
        const Pose probe = advance(env, s.pose, t);
        if (!env.footprint_free(probe.x, probe.y)) break;
        reached = t;
      }
      if (reached > 0.0) next.pose = advance(env, s.pose, reached);
      next.last_collided = reached < kForwardStep;
      break;
    }
  }
  return next;
}

Trajectory run_actions(const OccupancyEnvironment& env, const Pose& start,
                       const std::vector<Action>& actions, int step_limit) {
  if (actions.empty()) throw InvariantError("actions is non-empty");
  SimState s = make_sim_state(env, start);
  Trajectory traj;
  traj.poses.push_back(s.pose);
  for (Action a : actions) {
    if (s.done || s.steps_taken >= step_limit) break;
    s = step(env, s, a);
    traj.actions.push_back(a);
    traj.collided.push_back(s.last_collided);
    traj.poses.push_back(s.pose);
  }
  return traj;
}

std::uint64_t environment_feature_seed(const OccupancyEnvironment& env) {
  return std::stoull(environment_hash(env), nullptr, 16);
}

Trajectory run_policy(const OccupancyEnvironment& env, const Episode& episode, Policy& policy,
                      int step_limit, std::uint64_t seed, const FeatureStub* features) {
  FeatureStub fallback(ModelDims{}, environment_feature_seed(env));
  const FeatureStub& stub = features ? *features : fallback;

  SimState s = make_sim_state(env, episode.start);
  policy.begin_episode(episode, seed);
  Trajectory traj;
  traj.episode_id = episode.id;
  traj.poses.push_back(s.pose);
  Action prev = Action::Stop;
  while (!s.done && s.steps_taken < step_limit) {
    Observation obs;
    obs.episode = &episode;
    obs.pose = s.pose;
    obs.step = s.steps_taken;
    obs.prev_action = prev;
    obs.features = stub.features_for(s.pose, episode.instruction);
    const Action a = policy.act(obs);
    s = step(env, s, a);
    traj.actions.push_back(a);
    traj.collided.push_back(s.last_collided);
    traj.poses.push_back(s.pose);
    prev = a;
  }
  return traj;
}

}  // namespace navbench
