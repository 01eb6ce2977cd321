#pragma once

#include <cstdint>
#include <vector>

#include "navbench/core_world.hpp"

namespace navbench {

constexpr double kForwardStep = 0.25;     // meters per FORWARD
constexpr double kTurnStep = 15.0;        // degrees per turn
constexpr double kCollisionSample = 0.01; // segment sampling interval, meters
constexpr int kDefaultStepLimit = 500;

struct SimState {
  Pose pose;
  int steps_taken = 0;
  bool done = false;
  bool last_collided = false;
};

SimState make_sim_state(const OccupancyEnvironment& env, const Pose& start);

// Applies one low-level action. Turns change heading by exactly 15 degrees.
// FORWARD advances to the farthest navigable point along a 0.25m segment
// sampled at 0.01m; any shortfall sets last_collided (no wall sliding).
// STOP marks the state done. Throws SteppedAfterDone when s.done.
SimState step(const OccupancyEnvironment& env, const SimState& s, Action a);

// Replays an action sequence from start, truncating at STOP or step_limit.
// Throws StartNotNavigable; throws InvariantError on an empty action list.
Trajectory run_actions(const OccupancyEnvironment& env, const Pose& start,
                       const std::vector<Action>& actions, int step_limit = kDefaultStepLimit);

class Policy;
class FeatureStub;

// Seed for the deterministic feature stub, derived from the environment hash.
std::uint64_t environment_feature_seed(const OccupancyEnvironment& env);

// Rolls out a policy on an episode: seeds it, feeds per-pose observation
// features, and executes its actions until STOP or step_limit. When
// `features` is null a default stub keyed on the environment hash is used.
Trajectory run_policy(const OccupancyEnvironment& env, const Episode& episode, Policy& policy,
                      int step_limit = kDefaultStepLimit, std::uint64_t seed = 0,
                      const FeatureStub* features = nullptr);

}  // namespace navbench
