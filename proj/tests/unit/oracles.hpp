#pragma once

// Independent oracles for the unit and acceptance suites. Each reimplements
// its check from the definition, sharing no search/DP code with the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "navbench/core_world.hpp"
#include "navbench/geometry.hpp"

namespace oracles {

using navbench::OccupancyEnvironment;
using navbench::Vec2;
using navbench::Vec3;

// --- navigability by exhaustive cell scan -----------------------------------

// Enumerates every cell whose closed square touches the closed agent disk
// (including out-of-grid indices) and applies the navigability definition.
inline bool navigable_brute(const OccupancyEnvironment& env, const Vec3& p) {
  const double cs = env.cell_size();
  const double r = env.agent_radius();
  const int cx = static_cast<int>(std::floor(p.x / cs));
  const int cy = static_cast<int>(std::floor(p.y / cs));
  if (!env.in_bounds(cx, cy)) return false;
  if (std::abs(p.z - env.cell(cx, cy).floor_z) > OccupancyEnvironment::kFloorTolerance) return false;

  double zmin = std::numeric_limits<double>::infinity();
  double zmax = -zmin;
  bool any = false;
  for (int iy = static_cast<int>(std::floor((p.y - r) / cs));
       iy <= static_cast<int>(std::floor((p.y + r) / cs)); ++iy) {
    for (int ix = static_cast<int>(std::floor((p.x - r) / cs));
         ix <= static_cast<int>(std::floor((p.x + r) / cs)); ++ix) {
      const double dx = std::max({ix * cs - p.x, 0.0, p.x - (ix + 1) * cs});
      const double dy = std::max({iy * cs - p.y, 0.0, p.y - (iy + 1) * cs});
      if (dx * dx + dy * dy > r * r) continue;
      if (!env.in_bounds(ix, iy)) return false;
      if (env.cell(ix, iy).kind != navbench::CellKind::Free) return false;
      zmin = std::min(zmin, env.cell(ix, iy).floor_z);
      zmax = std::max(zmax, env.cell(ix, iy).floor_z);
      any = true;
    }
  }
  return any && (zmax - zmin) < OccupancyEnvironment::kFloorTolerance;
}

// Full scan over all cell centers with the spec's selection rule.
inline std::optional<Vec3> nearest_navigable_brute(const OccupancyEnvironment& env, const Vec3& p,
                                                   double max_disp) {
  if (navigable_brute(env, p)) return p;
  bool found = false;
  double best = 0.0;
  int bx = 0, by = 0;
  for (int ix = 0; ix < env.width(); ++ix) {
    for (int iy = 0; iy < env.height(); ++iy) {
      const Vec2 c = env.cell_center(ix, iy);
      const double d = std::hypot(c.x - p.x, c.y - p.y);
      if (d > max_disp) continue;
      const Vec3 cand{c.x, c.y, env.cell(ix, iy).floor_z};
      if (!navigable_brute(env, cand)) continue;
      if (!found || d < best) {
        found = true;
        best = d;
        bx = ix;
        by = iy;
      }
    }
  }
  if (!found) return std::nullopt;
  const Vec2 c = env.cell_center(bx, by);
  return Vec3{c.x, c.y, env.cell(bx, by).floor_z};
}

// --- Dijkstra reference for the geodesic ------------------------------------

// Independent shortest-path oracle over the same 8-connected cell graph.
// Costs are exact (straight, diagonal) move counts; the heap key
// s + d*sqrt(2) in doubles is collision-free for grids of this size.
struct DijkstraOracle {
  static constexpr double kUnreachable = -1.0;

  // navigable: per-cell predicate, row-major
  static std::vector<double> field(const OccupancyEnvironment& env,
                                   const std::vector<char>& navigable, int sx, int sy) {
    const int w = env.width();
    const int h = env.height();
    const double cell = env.cell_size();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<std::int64_t> straight(n, -1), diagonal(n, -1);
    std::vector<char> done(n, 0);
    using Entry = std::pair<double, std::int64_t>;  // (key, index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    const std::int64_t s0 = static_cast<std::int64_t>(sy) * w + sx;
    straight[s0] = 0;
    diagonal[s0] = 0;
    heap.push({0.0, s0});
    const double rt2 = std::sqrt(2.0);
    while (!heap.empty()) {
      const auto [key, idx] = heap.top();
      heap.pop();
      if (done[idx]) continue;
      done[idx] = 1;
      const int x = static_cast<int>(idx % w);
      const int y = static_cast<int>(idx / w);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::int64_t ni = static_cast<std::int64_t>(ny) * w + nx;
          if (!navigable[ni] || done[ni]) continue;
          const bool diag = dx != 0 && dy != 0;
          const std::int64_t ns = straight[idx] + (diag ? 0 : 1);
          const std::int64_t nd = diagonal[idx] + (diag ? 1 : 0);
          const double nkey = static_cast<double>(ns) + static_cast<double>(nd) * rt2;
          const double okey = straight[ni] < 0
                                  ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(straight[ni]) +
                                        static_cast<double>(diagonal[ni]) * rt2;
          if (nkey < okey) {
            straight[ni] = ns;
            diagonal[ni] = nd;
            heap.push({nkey, ni});
          }
        }
      }
    }
    std::vector<double> out(n, kUnreachable);
    for (std::size_t i = 0; i < n; ++i) {
      if (straight[i] >= 0 && done[i]) {
        out[i] = static_cast<double>(straight[i]) * cell +
                 static_cast<double>(diagonal[i]) * (cell * std::sqrt(2.0));
      }
    }
    return out;
  }
};

// --- exhaustive monotone-alignment DTW (lengths <= 8) -----------------------

// Minimum cumulative cost over all monotone alignments, by recursive
// enumeration of the (+1,0)/(0,+1)/(+1,+1) step choices.
inline double dtw_enumerate(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  const std::size_t n = a.size(), m = b.size();
  double best = std::numeric_limits<double>::infinity();
  struct Rec {
    const std::vector<Vec2>& a;
    const std::vector<Vec2>& b;
    double& best;
    void go(std::size_t i, std::size_t j, double cost) {
      cost += std::hypot(a[i].x - b[j].x, a[i].y - b[j].y);
      if (cost >= best) return;  // admissible prune: costs only grow
      if (i + 1 == a.size() && j + 1 == b.size()) {
        best = cost;
        return;
      }
      if (i + 1 < a.size()) go(i + 1, j, cost);
      if (j + 1 < b.size()) go(i, j + 1, cost);
      if (i + 1 < a.size() && j + 1 < b.size()) go(i + 1, j + 1, cost);
    }
  };
  Rec rec{a, b, best};
  rec.go(0, 0, 0.0);
  (void)n;
  (void)m;
  return best;
}

// --- forward-motion truncation oracle ----------------------------------------

// Farthest navigable prefix of the 0.25m segment at 0.01m samples, from the
// stated rule, using the brute-force navigability test.
inline double forward_travel_brute(const OccupancyEnvironment& env, double x, double y,
                                   double heading_deg) {
  const double rad = heading_deg * navbench::kDegToRad;
  double reached = 0.0;
  for (int i = 1; i <= 25; ++i) {
    const double t = (i == 25) ? 0.25 : i * 0.01;
    const double px = x + t * std::cos(rad);
    const double py = y + t * std::sin(rad);
    const auto fz = env.floor_height(px, py);
    if (!fz || !navigable_brute(env, Vec3{px, py, *fz})) break;
    reached = t;
  }
  return reached;
}

// --- numeric oracles ----------------------------------------------------------

// Kahan-compensated mean.
inline std::vector<double> mean_pool_kahan(const std::vector<std::vector<double>>& vs) {
  const std::size_t dim = vs.front().size();
  std::vector<double> sum(dim, 0.0), comp(dim, 0.0);
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double y = v[i] - comp[i];
      const double t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
  for (double& s : sum) s /= static_cast<double>(vs.size());
  return sum;
}

// Plain exp/normalize attention recompute (no max subtraction), straight from
// the formula.
inline std::vector<double> attn_output_direct(const std::vector<std::vector<double>>& inputs,
                                              const std::vector<double>& query,
                                              const std::vector<std::vector<double>>& w_key_rows) {
  const std::size_t dq = query.size();
  const std::size_t dx = inputs.front().size();
  std::vector<double> exps(inputs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    double dot = 0.0;
    for (std::size_t a = 0; a < dq; ++a) {
      double k = 0.0;
      for (std::size_t b = 0; b < dx; ++b) k += w_key_rows[a][b] * inputs[i][b];
      dot += k * query[a];
    }
    exps[i] = std::exp(dot / std::sqrt(static_cast<double>(dq)));
    total += exps[i];
  }
  std::vector<double> out(dx, 0.0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t c = 0; c < dx; ++c) out[c] += (exps[i] / total) * inputs[i][c];
  }
  return out;
}

}  // namespace oracles
