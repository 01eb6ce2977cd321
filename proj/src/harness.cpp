#include "navbench/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/parallel.hpp"
#include "navbench/pathfinding.hpp"
#include "navbench/rng.hpp"
#include "navbench/simulator.hpp"
#include "navbench/world_io.hpp"

namespace navbench {

namespace {

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : base_seed_(seed), rng_(seed) {}

  void begin_episode(const Episode&, std::uint64_t seed) override {
    rng_ = Rng(splitmix64(base_seed_ ^ splitmix64(seed)));
  }

  Action act(const Observation&) override {
    const double u = rng_.uniform();
    if (u < 0.68) return Action::Forward;
    if (u < 0.83) return Action::TurnLeft;
    if (u < 0.98) return Action::TurnRight;
    return Action::Stop;
  }

  std::unique_ptr<Policy> clone() const override { return std::make_unique<RandomPolicy>(*this); }

 private:
  std::uint64_t base_seed_;
  Rng rng_;
};

class HandcraftedPolicy : public Policy {
 public:
  explicit HandcraftedPolicy(std::uint64_t seed) : base_seed_(seed) {}

  void begin_episode(const Episode&, std::uint64_t seed) override {
    Rng rng(splitmix64(base_seed_ ^ splitmix64(seed)));
    target_heading_ = 15.0 * static_cast<double>(rng.uniform_int(24));
    forwards_done_ = 0;
  }

  Action act(const Observation& obs) override {
    const double diff = angle_difference(target_heading_, obs.pose.heading);
    if (std::abs(diff) > kTurnStep / 2.0) return diff > 0 ? Action::TurnLeft : Action::TurnRight;
    if (forwards_done_ < 37) {
      ++forwards_done_;
      return Action::Forward;
    }
    return Action::Stop;
  }

  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<HandcraftedPolicy>(*this);
  }

 private:
  std::uint64_t base_seed_;
  double target_heading_ = 0.0;
  int forwards_done_ = 0;
};

class Seq2SeqPolicy : public Policy {
 public:
  explicit Seq2SeqPolicy(const Seq2SeqParams& params) : params_(params) {}

  void begin_episode(const Episode&, std::uint64_t) override {
    state_ = seq2seq_initial_state(params_);
  }

  Action act(const Observation& obs) override {
    auto [out, next] = seq2seq_step(obs.features, state_, params_);
    state_ = std::move(next);
    return out.action;
  }

  std::unique_ptr<Policy> clone() const override { return std::make_unique<Seq2SeqPolicy>(*this); }

 private:
  Seq2SeqParams params_;
  Seq2SeqState state_;
};

class CmaPolicy : public Policy {
 public:
  explicit CmaPolicy(const CmaParams& params) : params_(params) {}

  void begin_episode(const Episode&, std::uint64_t) override {
    state_ = cma_initial_state(params_);
  }

  Action act(const Observation& obs) override {
    auto [out, next] = cma_step(obs.features, obs.prev_action, state_, params_);
    state_ = std::move(next);
    return out.action;
  }

  std::unique_ptr<Policy> clone() const override { return std::make_unique<CmaPolicy>(*this); }

 private:
  CmaParams params_;
  CmaState state_;
};

}  // namespace

std::unique_ptr<Policy> random_policy(std::uint64_t seed) {
  return std::make_unique<RandomPolicy>(seed);
}

std::unique_ptr<Policy> handcrafted_policy(std::uint64_t seed) {
  return std::make_unique<HandcraftedPolicy>(seed);
}

std::unique_ptr<Policy> seq2seq_policy(const Seq2SeqParams& params) {
  return std::make_unique<Seq2SeqPolicy>(params);
}

std::unique_ptr<Policy> cma_policy(const CmaParams& params) {
  return std::make_unique<CmaPolicy>(params);
}

OraclePolicy::OraclePolicy(const OccupancyEnvironment& env)
    : nav_(std::make_shared<Navigability>(env)) {}

void OraclePolicy::begin_episode(const Episode& episode, std::uint64_t) {
  episode_ = &episode;
  target_index_ = episode.reference_waypoints.size() > 1 ? 1 : 0;
  last_unreachable_ = false;
}

Action OraclePolicy::act(const Observation& obs) {
  if (!episode_ || episode_->reference_waypoints.empty()) return Action::Stop;
  const auto& waypoints = episode_->reference_waypoints;
  last_unreachable_ = false;

  // consume waypoints the agent has already reached
  while (target_index_ + 1 < waypoints.size() &&
         horizontal_distance(obs.pose.position(), waypoints[target_index_]) <= kWaypointRadius) {
    ++target_index_;
  }
  const Vec3& target = waypoints[target_index_];
  const bool is_last = target_index_ + 1 == waypoints.size();
  if (is_last && horizontal_distance(obs.pose.position(), target) <= kWaypointRadius) {
    return Action::Stop;
  }
  try {
    const auto a = follow_step(*nav_, obs.pose, target, kWaypointRadius);
    // nullopt cannot happen here: reached waypoints were consumed above
    return a.value_or(Action::Stop);
  } catch (const Unreachable&) {
    last_unreachable_ = true;
    return Action::Stop;
  } catch (const FromNotNavigable&) {
    last_unreachable_ = true;
    return Action::Stop;
  }
}

std::unique_ptr<Policy> OraclePolicy::clone() const { return std::make_unique<OraclePolicy>(*this); }

std::unique_ptr<Policy> make_policy(const std::string& name, const OccupancyEnvironment& env,
                                    std::uint64_t seed, const std::string& params_path) {
  if (name == "random") return random_policy(seed);
  if (name == "handcrafted") return handcrafted_policy(seed);
  if (name == "oracle") return std::make_unique<OraclePolicy>(env);
  if (name == "seq2seq") {
    return seq2seq_policy(params_path.empty() ? make_seq2seq_params(ModelDims{}, seed)
                                              : load_seq2seq_params(params_path));
  }
  if (name == "cma") {
    return cma_policy(params_path.empty() ? make_cma_params(ModelDims{}, seed)
                                          : load_cma_params(params_path));
  }
  throw Error("unknown_policy", "unknown policy '" + name + "'");
}

std::vector<double> inflection_weights(const std::vector<Action>& actions, double coefficient) {
  if (actions.empty()) throw EmptyInput("actions");
  if (coefficient < 1.0) throw InvariantError("coefficient >= 1");
  std::vector<double> weights(actions.size(), 1.0);
  weights[0] = coefficient;
  for (std::size_t t = 1; t < actions.size(); ++t) {
    if (actions[t] != actions[t - 1]) weights[t] = coefficient;
  }
  return weights;
}

double inflection_frequency(const std::vector<Episode>& episodes) {
  if (episodes.empty()) throw EmptyDataset();
  std::size_t inflections = 0;
  std::size_t total = 0;
  for (const Episode& e : episodes) {
    const auto& a = e.reference_actions;
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (t == 0 || a[t] != a[t - 1]) ++inflections;
    }
    total += a.size();
  }
  if (total == 0) throw EmptyDataset();
  return static_cast<double>(inflections) / static_cast<double>(total);
}

std::vector<double> progress_targets(std::size_t n_actions) {
  if (n_actions == 0) throw EmptyInput("actions");
  std::vector<double> targets(n_actions);
  for (std::size_t t = 0; t < n_actions; ++t) {
    targets[t] = static_cast<double>(t + 1) / static_cast<double>(n_actions);
  }
  return targets;
}

std::size_t DaggerRound::step_count() const {
  std::size_t n = 0;
  for (const DaggerEpisode& e : collected) n += e.steps.size();
  return n;
}

std::size_t DaggerDataset::total_trajectories() const {
  std::size_t n = 0;
  for (const DaggerRound& r : rounds) n += r.collected.size();
  return n;
}

void DaggerDataset::append(DaggerRound round) { rounds.push_back(std::move(round)); }

DaggerRound dagger_collect(const OccupancyEnvironment& env, const std::vector<Episode>& episodes,
                           const Policy& policy, int round_index, int per_round, DaggerMode mode,
                           std::uint64_t seed, int step_limit, int threads, bool record_features) {
  if (episodes.empty()) throw EmptyDataset();
  if (per_round < 1) throw InvariantError("per_round >= 1");

  DaggerRound round;
  round.round_index = round_index;
  round.mode = mode;
  const int exponent = mode == DaggerMode::Finetune ? round_index + 1 : round_index;
  round.beta = std::pow(kDaggerBetaBase, exponent);

  const FeatureStub stub(ModelDims{}, environment_feature_seed(env));
  OraclePolicy oracle_template(env);
  round.collected.resize(per_round);

  parallel_for(per_round, threads, [&](std::int64_t k) {
    const Episode& episode = episodes[static_cast<std::size_t>(k) % episodes.size()];
    const std::uint64_t stream =
        splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(round_index) << 32) |
                                     static_cast<std::uint64_t>(k)));
    Rng mix_rng(stream);
    auto learner = policy.clone();
    auto oracle = oracle_template.clone();
    OraclePolicy* oracle_ptr = static_cast<OraclePolicy*>(oracle.get());
    learner->begin_episode(episode, splitmix64(stream ^ 1));
    oracle->begin_episode(episode, 0);

    DaggerEpisode out;
    out.episode_id = episode.id;
    SimState s = make_sim_state(env, episode.start);
    out.trajectory.episode_id = episode.id;
    out.trajectory.poses.push_back(s.pose);
    Action prev = Action::Stop;
    while (!s.done && s.steps_taken < step_limit) {
      Observation obs;
      obs.episode = &episode;
      obs.pose = s.pose;
      obs.step = s.steps_taken;
      obs.prev_action = prev;
      obs.features = stub.features_for(s.pose, episode.instruction);

      DaggerStep rec;
      rec.oracle = oracle->act(obs);
      rec.oracle_unreachable = oracle_ptr->last_unreachable();
      const Action learner_action = learner->act(obs);
      rec.used_oracle = mix_rng.uniform() < round.beta;
      rec.executed = rec.used_oracle ? rec.oracle : learner_action;
      if (record_features) {
        rec.pose_features = concat(obs.features.visual);
        const Vector depth_flat = concat(obs.features.depth);
        rec.pose_features.insert(rec.pose_features.end(), depth_flat.begin(), depth_flat.end());
      }

      s = step(env, s, rec.executed);
      out.trajectory.actions.push_back(rec.executed);
      out.trajectory.collided.push_back(s.last_collided);
      out.trajectory.poses.push_back(s.pose);
      out.steps.push_back(std::move(rec));
      prev = rec.executed;
    }
    round.collected[k] = std::move(out);
  });
  return round;
}

std::string dagger_round_records(const DaggerRound& round, double inflection_coefficient) {
  char head[128];
  std::snprintf(head, sizeof(head), "round %d beta %.10f mode %s\n", round.round_index, round.beta,
                round.mode == DaggerMode::Finetune ? "finetune" : "standard");
  std::string out = head;
  for (const DaggerEpisode& e : round.collected) {
    out += "trajectory " + e.episode_id + " " + std::to_string(e.steps.size()) + "\n";
    if (e.steps.empty()) continue;
    std::vector<Action> labels;
    labels.reserve(e.steps.size());
    for (const DaggerStep& s : e.steps) labels.push_back(s.oracle);
    const std::vector<double> weights = inflection_weights(labels, inflection_coefficient);
    const std::vector<double> progress = progress_targets(e.steps.size());
    for (std::size_t t = 0; t < e.steps.size(); ++t) {
      const DaggerStep& s = e.steps[t];
      out += "step " + std::to_string(t) + " ";
      out += action_to_char(s.executed);
      out += ' ';
      out += action_to_char(s.oracle);
      out += ' ';
      out += s.used_oracle ? '1' : '0';
      out += ' ';
      out += format_double(weights[t]) + " " + format_double(progress[t]);
      for (double f : s.pose_features) out += " " + format_double(f);
      out += "\n";
    }
  }
  return out;
}

std::vector<Trajectory> run_batch(const OccupancyEnvironment& env,
                                  const std::vector<Episode>& episodes, const Policy& policy,
                                  int step_limit, std::uint64_t seed, int threads) {
  if (episodes.empty()) throw EmptyDataset();
  const FeatureStub stub(ModelDims{}, environment_feature_seed(env));
  std::vector<Trajectory> out(episodes.size());
  parallel_for(static_cast<std::int64_t>(episodes.size()), threads, [&](std::int64_t i) {
    auto p = policy.clone();
    out[i] = run_policy(env, episodes[i], *p, step_limit, Rng::stream(seed, i).next(), &stub);
  });
  return out;
}

}  // namespace navbench
