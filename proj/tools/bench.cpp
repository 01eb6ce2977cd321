// Timing comparison between the optimized kernels and their serial reference
// implementations: batch evaluation (distance field + OpenMP) vs per-query
// A*, the two-row DTW vs the full table, and parallel vs serial transfer and
// rollouts. Also cross-checks that both routes produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "navbench/harness.hpp"
#include "navbench/metrics.hpp"
#include "navbench/parallel.hpp"
#include "navbench/reference.hpp"
#include "navbench/simulator.hpp"
#include "navbench/transfer.hpp"
#include "navbench/worldgen.hpp"

using namespace navbench;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double fast_ms, bool match) {
  std::printf("%-34s %10.1f %10.1f %8.2fx   %s\n", name.c_str(), serial_ms, fast_ms,
              serial_ms / fast_ms, match ? "ok" : "MISMATCH");
}

bool metrics_equal(const std::vector<EpisodeMetrics>& a, const std::vector<EpisodeMetrics>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].tl != b[i].tl || a[i].ne != b[i].ne || a[i].ndtw != b[i].ndtw ||
        a[i].os != b[i].os || a[i].sr != b[i].sr || a[i].spl != b[i].spl) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = hardware_threads();
  if (argc > 1) threads = std::atoi(argv[1]);
  std::printf("threads: %d\n", threads);
  std::printf("%-34s %10s %10s %9s   %s\n", "kernel", "serial ms", "fast ms", "speedup", "check");

  const auto plans = worldgen::plan_mix(12, 0, 0, 0, 7);
  auto fx = worldgen::make_corridor_fixture(plans, 7);

  // transfer: serial vs parallel
  auto t0 = std::chrono::steady_clock::now();
  const TransferResult serial_transfer =
      transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions, {}, 1);
  const double transfer_serial = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const TransferResult parallel_transfer =
      transfer_dataset(fx.env, fx.graph, fx.trajectories, fx.instructions, {}, threads);
  const double transfer_parallel = ms_since(t0);
  bool transfer_match = serial_transfer.episodes.size() == parallel_transfer.episodes.size();
  for (std::size_t i = 0; transfer_match && i < serial_transfer.episodes.size(); ++i) {
    transfer_match = serialize_episode(serial_transfer.episodes[i]) ==
                     serialize_episode(parallel_transfer.episodes[i]);
  }
  row("transfer pipeline (omp)", transfer_serial, transfer_parallel, transfer_match);

  const std::vector<Episode>& episodes = serial_transfer.episodes;

  // rollouts: serial vs parallel
  OraclePolicy oracle(fx.env);
  t0 = std::chrono::steady_clock::now();
  const auto trajs_serial = run_batch(fx.env, episodes, oracle, 500, 11, 1);
  const double roll_serial = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto trajs_parallel = run_batch(fx.env, episodes, oracle, 500, 11, threads);
  const double roll_parallel = ms_since(t0);
  bool roll_match = trajs_serial.size() == trajs_parallel.size();
  for (std::size_t i = 0; roll_match && i < trajs_serial.size(); ++i) {
    roll_match = trajs_serial[i].actions == trajs_parallel[i].actions;
  }
  row("oracle rollouts (omp)", roll_serial, roll_parallel, roll_match);

  // evaluation: per-query A* reference vs distance-field + OpenMP
  t0 = std::chrono::steady_clock::now();
  const auto eval_ref = ref::evaluate_dataset(fx.env, episodes, trajs_serial, 3.0);
  const double eval_serial = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto eval_fast = evaluate_dataset(fx.env, episodes, trajs_serial, 3.0, threads);
  const double eval_parallel = ms_since(t0);
  row("evaluation (field + omp)", eval_serial, eval_parallel, metrics_equal(eval_ref, eval_fast));

  // DTW: full table vs two-row, on repeated long pairs
  const std::vector<Pose>& probe_poses = trajs_serial.front().poses;
  const std::vector<Vec3>& probe_ref = episodes.front().reference_waypoints;
  std::vector<Pose> long_poses;
  std::vector<Vec3> long_ref;
  for (int r = 0; r < 20; ++r) {
    long_poses.insert(long_poses.end(), probe_poses.begin(), probe_poses.end());
    long_ref.insert(long_ref.end(), probe_ref.begin(), probe_ref.end());
  }
  t0 = std::chrono::steady_clock::now();
  DtwResult dt_ref{};
  for (int i = 0; i < 20; ++i) dt_ref = ref::ndtw(long_poses, long_ref, 3.0);
  const double dtw_full = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  DtwResult dt_fast{};
  for (int i = 0; i < 20; ++i) dt_fast = ndtw(long_poses, long_ref, 3.0);
  const double dtw_rolling = ms_since(t0);
  row("dtw (two-row table)", dtw_full, dtw_rolling, dt_ref.dtw == dt_fast.dtw);

  return 0;
}
