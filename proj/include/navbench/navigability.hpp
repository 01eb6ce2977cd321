#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "navbench/core_world.hpp"

namespace navbench {

// Precomputed cell-center navigability for one immutable environment.
// Built eagerly so instances are const and freely shared across threads.
class Navigability {
 public:
  explicit Navigability(const OccupancyEnvironment& env);

  const OccupancyEnvironment& env() const { return env_; }
  bool cell_navigable(int ix, int iy) const {
    return env_.in_bounds(ix, iy) && navigable_[static_cast<std::size_t>(iy) * env_.width() + ix];
  }

  // Maps a continuous point to a navigable cell for graph queries: its own
  // cell when the center qualifies, otherwise the nearest navigable center in
  // the 3x3 neighborhood (ties toward smaller x, then y index).
  std::optional<std::pair<int, int>> snap_cell(const Vec2& p) const;

 private:
  const OccupancyEnvironment& env_;
  std::vector<std::uint8_t> navigable_;
};

}  // namespace navbench
