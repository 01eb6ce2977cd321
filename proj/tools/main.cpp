// navbench CLI: rollouts, DAgger collection, dataset transfer, evaluation,
// verification, rendering, and graph snapping over the toolkit's file formats.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "navbench/errors.hpp"
#include "navbench/geometry.hpp"
#include "navbench/graph_snap.hpp"
#include "navbench/harness.hpp"
#include "navbench/metrics.hpp"
#include "navbench/pathfinding.hpp"
#include "navbench/render.hpp"
#include "navbench/simulator.hpp"
#include "navbench/transfer.hpp"
#include "navbench/world_io.hpp"

namespace fs = std::filesystem;
using namespace navbench;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  int step_limit = kDefaultStepLimit;
  double radius = kDefaultSuccessRadius;
  int threads = 1;
};

std::vector<Trajectory> load_trajectory_dir(const std::string& dir,
                                            const std::vector<Episode>& episodes) {
  std::vector<Trajectory> out;
  out.reserve(episodes.size());
  for (const Episode& e : episodes) {
    const fs::path path = fs::path(dir) / (e.id + ".traj");
    if (!fs::exists(path)) throw IoError("missing trajectory file " + path.string());
    out.push_back(load_trajectory(path.string()));
  }
  return out;
}

int cmd_run(const GlobalOptions& g, const std::string& env_path, const std::string& episodes_path,
            const std::string& policy_name, const std::string& params_path,
            const std::string& out_dir) {
  const OccupancyEnvironment env = load_environment(env_path);
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  if (episodes.empty()) throw EmptyDataset();
  const auto policy = make_policy(policy_name, env, g.seed, params_path);
  const std::vector<Trajectory> trajs =
      run_batch(env, episodes, *policy, g.step_limit, g.seed, g.threads);
  fs::create_directories(out_dir);
  const std::string hash = environment_hash(env);
  for (const Trajectory& t : trajs) {
    save_trajectory((fs::path(out_dir) / (t.episode_id + ".traj")).string(), t, hash);
  }
  std::cout << "wrote " << trajs.size() << " trajectories to " << out_dir << "\n";
  return 0;
}

int cmd_collect(const GlobalOptions& g, const std::string& env_path,
                const std::string& episodes_path, const std::string& policy_name,
                const std::string& params_path, int rounds, int per_round,
                const std::string& mode_name, double coefficient, bool record_features,
                const std::string& out_dir) {
  const OccupancyEnvironment env = load_environment(env_path);
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  const auto policy = make_policy(policy_name, env, g.seed, params_path);
  const DaggerMode mode = mode_name == "finetune" ? DaggerMode::Finetune : DaggerMode::Standard;
  fs::create_directories(out_dir);

  DaggerDataset dataset;
  for (int n = 0; n < rounds; ++n) {
    DaggerRound round = dagger_collect(env, episodes, *policy, n, per_round, mode, g.seed,
                                       g.step_limit, g.threads, record_features);
    write_text_file((fs::path(out_dir) / ("round_" + std::to_string(n) + ".txt")).string(),
                    dagger_round_records(round, coefficient));
    dataset.append(std::move(round));
  }
  std::string manifest = "rounds " + std::to_string(rounds) + "\n";
  for (const DaggerRound& r : dataset.rounds) {
    manifest += "round " + std::to_string(r.round_index) + " beta " + format_double(r.beta) +
                " trajectories " + std::to_string(r.collected.size()) + " steps " +
                std::to_string(r.step_count()) + "\n";
  }
  manifest += "total_trajectories " + std::to_string(dataset.total_trajectories()) + "\n";
  write_text_file((fs::path(out_dir) / "aggregate.txt").string(), manifest);
  std::cout << "collected " << dataset.total_trajectories() << " trajectories over " << rounds
            << " rounds into " << out_dir << "\n";
  return 0;
}

int cmd_weights(const std::string& episodes_path, double coefficient, const std::string& out_path) {
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  if (episodes.empty()) throw EmptyDataset();
  std::string out;
  for (const Episode& e : episodes) {
    if (e.reference_actions.empty()) continue;
    const auto w = inflection_weights(e.reference_actions, coefficient);
    const auto p = progress_targets(e.reference_actions.size());
    out += e.id + " inflection";
    for (double x : w) out += " " + format_double(x);
    out += "\n" + e.id + " progress";
    for (double x : p) out += " " + format_double(x);
    out += "\n";
  }
  write_text_file(out_path, out);
  std::cout << "wrote labels for " << episodes.size() << " episodes to " << out_path << "\n";
  return 0;
}

int cmd_transfer(const GlobalOptions& g, const std::string& env_path, const std::string& graph_path,
                 const std::string& traj_path, const std::string& instr_path,
                 const std::string& overrides_path, const std::string& out_path,
                 const std::string& report_path) {
  const OccupancyEnvironment env = load_environment(env_path);
  const NavGraph graph = load_nav_graph(graph_path);
  const auto trajectories = load_graph_trajectories(traj_path);
  std::map<std::string, std::vector<std::vector<int>>> instructions;
  if (!instr_path.empty()) instructions = load_instructions(instr_path);
  std::map<int, Vec3> overrides;
  if (!overrides_path.empty()) overrides = load_overrides(overrides_path);

  const TransferResult result =
      transfer_dataset(env, graph, trajectories, instructions, overrides, g.threads);
  save_episodes(out_path, result.episodes);
  if (!report_path.empty()) write_text_file(report_path, transfer_report_text(result.report));
  std::cout << "transferred " << result.episodes.size() << " episodes from "
            << trajectories.size() << " trajectories\n";
  return 0;
}

int cmd_eval(const GlobalOptions& g, const std::string& env_path, const std::string& episodes_path,
             const std::string& traj_dir, const std::string& out_path) {
  const OccupancyEnvironment env = load_environment(env_path);
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  const std::vector<Trajectory> trajs = load_trajectory_dir(traj_dir, episodes);
  const auto metrics = evaluate_dataset(env, episodes, trajs, g.radius, g.threads);
  const std::string table = metrics_table(metrics);
  if (out_path.empty()) {
    std::cout << table;
  } else {
    write_text_file(out_path, table);
  }
  return 0;
}

int cmd_verify(const GlobalOptions& g, const std::string& env_path,
               const std::string& episodes_path) {
  (void)g;
  const OccupancyEnvironment env = load_environment(env_path);
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  if (episodes.empty()) throw EmptyDataset();
  int failures = 0;
  for (const Episode& e : episodes) {
    std::string verdict = "OK";
    try {
      const Trajectory t = run_actions(env, e.start, e.reference_actions, 1 << 20);
      // every waypoint must be visited in order within the arrival radius
      std::size_t next_wp = 0;
      for (const Pose& p : t.poses) {
        while (next_wp < e.reference_waypoints.size() &&
               horizontal_distance(p.position(), e.reference_waypoints[next_wp]) <=
                   kWaypointRadius) {
          ++next_wp;
        }
      }
      if (next_wp < e.reference_waypoints.size()) {
        verdict = "FAIL waypoint " + std::to_string(next_wp);
      } else if (horizontal_distance(t.poses.back().position(), e.goal) > kWaypointRadius) {
        verdict = "FAIL goal";
      }
    } catch (const Error& err) {
      verdict = std::string("FAIL ") + err.code();
    }
    if (verdict != "OK") ++failures;
    std::cout << e.id << " " << verdict << "\n";
  }
  std::cout << "# " << (episodes.size() - failures) << "/" << episodes.size() << " verified\n";
  return failures == 0 ? 0 : 2;
}

int cmd_snap(const std::string& graph_path, const std::string& traj_dir,
             const std::string& episodes_path, const std::string& out_path) {
  const NavGraph graph = load_nav_graph(graph_path);
  const std::vector<Episode> episodes = load_episodes(episodes_path);
  const std::vector<Trajectory> trajs = load_trajectory_dir(traj_dir, episodes);
  std::string out;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    std::vector<Vec3> positions;
    positions.reserve(trajs[i].poses.size());
    for (const Pose& p : trajs[i].poses) positions.push_back(p.position());
    const int start_node = nearest_node(graph, positions.front());
    const SnappedPath snapped = snap(graph, start_node, positions);
    out += episodes[i].id;
    for (int id : snapped.node_ids) out += " " + std::to_string(id);
    out += "\n";
  }
  write_text_file(out_path, out);
  std::cout << "snapped " << episodes.size() << " trajectories to " << out_path << "\n";
  return 0;
}

int cmd_render(const std::string& env_path, const std::string& episodes_path,
               const std::string& episode_id, const std::string& traj_path,
               const std::string& format, const std::string& out_path) {
  const OccupancyEnvironment env = load_environment(env_path);
  Episode episode;
  const Episode* episode_ptr = nullptr;
  if (!episodes_path.empty()) {
    const auto episodes = load_episodes(episodes_path);
    if (episodes.empty()) throw EmptyDataset();
    if (episode_id.empty()) {
      episode = episodes.front();
    } else {
      bool found = false;
      for (const Episode& e : episodes) {
        if (e.id == episode_id) {
          episode = e;
          found = true;
          break;
        }
      }
      if (!found) throw IoError("episode '" + episode_id + "' not found");
    }
    episode_ptr = &episode;
  }
  Trajectory traj;
  const Trajectory* traj_ptr = nullptr;
  if (!traj_path.empty()) {
    traj = load_trajectory(traj_path);
    traj_ptr = &traj;
  }
  const std::string image =
      format == "pgm" ? render_pgm(env, episode_ptr, traj_ptr) : render_ascii(env, episode_ptr, traj_ptr);
  if (out_path.empty()) {
    std::cout << image;
  } else {
    write_text_file(out_path, image);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-environment instruction-navigation benchmark toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "global random seed");
  app.add_option("--step-limit", g.step_limit, "simulator step limit");
  app.add_option("--radius", g.radius, "success radius in meters");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  std::string env_path, episodes_path, graph_path, traj_arg, instr_path, overrides_path;
  std::string out_path, report_path, out_dir, params_path;
  std::string policy_name = "random";
  std::string mode_name = "standard";
  std::string format = "ascii";
  std::string episode_id;
  int rounds = 1;
  int per_round = 100;
  double coefficient = kInflectionCoefficient;
  bool record_features = false;

  CLI::App* run = app.add_subcommand("run", "roll out a policy over episodes");
  run->add_option("--env", env_path)->required();
  run->add_option("--episodes", episodes_path)->required();
  run->add_option("--policy", policy_name, "random|handcrafted|oracle|seq2seq|cma");
  run->add_option("--params", params_path, "parameter file for learned policies");
  run->add_option("--out-dir", out_dir)->required();

  CLI::App* collect = app.add_subcommand("collect", "collect aggregated imitation data");
  collect->add_option("--env", env_path)->required();
  collect->add_option("--episodes", episodes_path)->required();
  collect->add_option("--policy", policy_name);
  collect->add_option("--params", params_path);
  collect->add_option("--rounds", rounds, "number of collection rounds (0..n-1)");
  collect->add_option("--per-round", per_round, "trajectories per round");
  collect->add_option("--mode", mode_name, "standard|finetune");
  collect->add_option("--coef", coefficient, "inflection weighting coefficient");
  collect->add_flag("--features", record_features, "embed feature vectors in records");
  collect->add_option("--out-dir", out_dir)->required();

  CLI::App* weights = app.add_subcommand("weights", "emit inflection/progress label files");
  weights->add_option("--episodes", episodes_path)->required();
  weights->add_option("--coef", coefficient);
  weights->add_option("--out", out_path)->required();

  CLI::App* transfer = app.add_subcommand("transfer", "convert nav-graph trajectories to episodes");
  transfer->add_option("--env", env_path)->required();
  transfer->add_option("--graph", graph_path)->required();
  transfer->add_option("--trajectories", traj_arg)->required();
  transfer->add_option("--instructions", instr_path);
  transfer->add_option("--overrides", overrides_path);
  transfer->add_option("--out", out_path)->required();
  transfer->add_option("--report", report_path);

  CLI::App* eval = app.add_subcommand("eval", "evaluate trajectories against episodes");
  eval->add_option("--env", env_path)->required();
  eval->add_option("--episodes", episodes_path)->required();
  eval->add_option("--trajectories", traj_arg, "directory of .traj files")->required();
  eval->add_option("--out", out_path);

  CLI::App* verify = app.add_subcommand("verify", "replay reference actions and check waypoints");
  verify->add_option("--env", env_path)->required();
  verify->add_option("--episodes", episodes_path)->required();

  CLI::App* snap_cmd = app.add_subcommand("snap", "convert continuous trajectories to node paths");
  snap_cmd->add_option("--graph", graph_path)->required();
  snap_cmd->add_option("--trajectories", traj_arg, "directory of .traj files")->required();
  snap_cmd->add_option("--episodes", episodes_path)->required();
  snap_cmd->add_option("--out", out_path)->required();

  CLI::App* render = app.add_subcommand("render", "top-down map of env, reference, trajectory");
  render->add_option("--env", env_path)->required();
  render->add_option("--episodes", episodes_path);
  render->add_option("--id", episode_id, "episode id (default: first)");
  render->add_option("--trajectory", traj_arg, "single .traj file to overlay");
  render->add_option("--format", format, "ascii|pgm");
  render->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(g, env_path, episodes_path, policy_name, params_path, out_dir);
    if (collect->parsed())
      return cmd_collect(g, env_path, episodes_path, policy_name, params_path, rounds, per_round,
                         mode_name, coefficient, record_features, out_dir);
    if (weights->parsed()) return cmd_weights(episodes_path, coefficient, out_path);
    if (transfer->parsed())
      return cmd_transfer(g, env_path, graph_path, traj_arg, instr_path, overrides_path, out_path,
                          report_path);
    if (eval->parsed()) return cmd_eval(g, env_path, episodes_path, traj_arg, out_path);
    if (verify->parsed()) return cmd_verify(g, env_path, episodes_path);
    if (snap_cmd->parsed()) return cmd_snap(graph_path, traj_arg, episodes_path, out_path);
    if (render->parsed())
      return cmd_render(env_path, episodes_path, episode_id, traj_arg, format, out_path);
  } catch (const Error& e) {
    nlohmann::json rec{{"error", e.code()}, {"message", e.what()}};
    std::cerr << rec.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json rec{{"error", "internal"}, {"message", e.what()}};
    std::cerr << rec.dump() << "\n";
    return 1;
  }
  return 0;
}
