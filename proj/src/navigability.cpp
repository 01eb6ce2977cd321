#include "navbench/navigability.hpp"

#include <cmath>

namespace navbench {

Navigability::Navigability(const OccupancyEnvironment& env)
    : env_(env), navigable_(static_cast<std::size_t>(env.width()) * env.height()) {
  const int w = env.width();
  for (int iy = 0; iy < env.height(); ++iy) {
    for (int ix = 0; ix < w; ++ix) {
      const Vec2 c = env.cell_center(ix, iy);
      navigable_[static_cast<std::size_t>(iy) * w + ix] = env.footprint_free(c.x, c.y) ? 1 : 0;
    }
  }
}

std::optional<std::pair<int, int>> Navigability::snap_cell(const Vec2& p) const {
  const int ix = env_.cell_index_x(p.x);
  const int iy = env_.cell_index_y(p.y);
  if (cell_navigable(ix, iy)) return std::make_pair(ix, iy);
  bool found = false;
  double best = 0.0;
  std::pair<int, int> best_cell{0, 0};
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const int cx = ix + dx;
      const int cy = iy + dy;
      if (!cell_navigable(cx, cy)) continue;
      const Vec2 c = env_.cell_center(cx, cy);
      const double d = std::hypot(c.x - p.x, c.y - p.y);
      const bool better =
          !found || d < best ||
          (d == best && (cx < best_cell.first || (cx == best_cell.first && cy < best_cell.second)));
      if (better) {
        found = true;
        best = d;
        best_cell = {cx, cy};
      }
    }
  }
  if (found) return best_cell;
  return std::nullopt;
}

}  // namespace navbench
