#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/navigability.hpp"
#include "navbench/policy.hpp"

namespace navbench {

// Samples actions i.i.d. from the train-set action distribution:
// 68% forward, 15% turn-left, 15% turn-right, 2% stop.
std::unique_ptr<Policy> random_policy(std::uint64_t seed);

// Turns to a uniformly random multiple of 15 degrees, takes 37 forward
// actions, then stops.
std::unique_ptr<Policy> handcrafted_policy(std::uint64_t seed);

// Shortest-path teacher: follows the episode waypoints, re-planning from the
// current pose every step so its action stays correct off-distribution. On a
// mid-episode unreachable target it emits STOP and flags the step.
class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(const OccupancyEnvironment& env);

  void begin_episode(const Episode& episode, std::uint64_t seed) override;
  Action act(const Observation& obs) override;
  std::unique_ptr<Policy> clone() const override;

  bool last_unreachable() const { return last_unreachable_; }

 private:
  std::shared_ptr<const Navigability> nav_;
  const Episode* episode_ = nullptr;
  std::size_t target_index_ = 0;
  bool last_unreachable_ = false;
};

// Greedy wrappers around the numeric policy kernels.
std::unique_ptr<Policy> seq2seq_policy(const Seq2SeqParams& params);
std::unique_ptr<Policy> cma_policy(const CmaParams& params);

// Builds any of the named policies: random | handcrafted | oracle | seq2seq | cma.
std::unique_ptr<Policy> make_policy(const std::string& name, const OccupancyEnvironment& env,
                                    std::uint64_t seed, const std::string& params_path = "");

// weight_t = coefficient where the action changes (t == 0 counts), else 1.
std::vector<double> inflection_weights(const std::vector<Action>& actions, double coefficient);

// Fraction of ground-truth steps that are inflections, over a dataset.
double inflection_frequency(const std::vector<Episode>& episodes);

// target_t = (t + 1) / T.
std::vector<double> progress_targets(std::size_t n_actions);

enum class DaggerMode { Standard, Finetune };

struct DaggerStep {
  Action executed = Action::Stop;
  Action oracle = Action::Stop;
  bool used_oracle = false;
  bool oracle_unreachable = false;
  std::vector<double> pose_features;  // flattened visual+depth stub features
};

struct DaggerEpisode {
  std::string episode_id;
  Trajectory trajectory;
  std::vector<DaggerStep> steps;
};

struct DaggerRound {
  int round_index = 0;
  double beta = 1.0;
  DaggerMode mode = DaggerMode::Standard;
  std::vector<DaggerEpisode> collected;

  std::size_t step_count() const;
};

// Collects per_round trajectories by cycling the episode list, executing the
// oracle action with probability beta = 0.75^n (0.75^(n+1) in finetune mode)
// and the policy action otherwise. Every step logs the oracle action as the
// label regardless of what ran. Rollouts are seeded per (seed, round, index)
// and independent, so threads > 1 changes nothing in the output.
DaggerRound dagger_collect(const OccupancyEnvironment& env, const std::vector<Episode>& episodes,
                           const Policy& policy, int round_index, int per_round,
                           DaggerMode mode = DaggerMode::Standard, std::uint64_t seed = 0,
                           int step_limit = 500, int threads = 1, bool record_features = false);

// Rounds 0..n aggregated in order, as DAgger trains on.
struct DaggerDataset {
  std::vector<DaggerRound> rounds;

  std::size_t total_trajectories() const;
  void append(DaggerRound round);
};

// Training records for an external learner: per trajectory a header line and
// per step "step <t> <executed> <oracle> <used_oracle> <weight> <progress>"
// (plus the flattened features when recorded).
std::string dagger_round_records(const DaggerRound& round, double inflection_coefficient);

// Batch rollouts: one trajectory per episode, policy cloned per rollout,
// seeded per (seed, episode index). Output is index-aligned with episodes.
std::vector<Trajectory> run_batch(const OccupancyEnvironment& env,
                                  const std::vector<Episode>& episodes, const Policy& policy,
                                  int step_limit = 500, std::uint64_t seed = 0, int threads = 1);

constexpr double kInflectionCoefficient = 3.2;
constexpr double kDaggerBetaBase = 0.75;

}  // namespace navbench
