#pragma once

#include <cstdint>
#include <memory>

#include "navbench/attention.hpp"
#include "navbench/core_world.hpp"

namespace navbench {

// What a policy sees at one step. Learned policies consume only the feature
// sets and prev_action; pose is simulator state exposed for scripted oracles.
struct Observation {
  const Episode* episode = nullptr;
  Pose pose;
  int step = 0;
  Action prev_action = Action::Stop;
  FeatureSet features;
};

// Episode-local decision maker, deterministic given the begin_episode seed.
// Implementations never get queried again after emitting STOP.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(const Episode& episode, std::uint64_t seed) = 0;
  virtual Action act(const Observation& obs) = 0;
  virtual std::unique_ptr<Policy> clone() const = 0;
};

}  // namespace navbench
