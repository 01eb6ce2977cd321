#include "navbench/render.hpp"

#include <vector>

namespace navbench {

namespace {

struct Overlay {
  std::vector<char> marks;  // 0 = none, else glyph
  int w, h;

  Overlay(int width, int height) : marks(static_cast<std::size_t>(width) * height, 0), w(width), h(height) {}

  void mark(const OccupancyEnvironment& env, double x, double y, char glyph, bool weak = false) {
    const int ix = env.cell_index_x(x);
    const int iy = env.cell_index_y(y);
    if (!env.in_bounds(ix, iy)) return;
    char& slot = marks[static_cast<std::size_t>(iy) * w + ix];
    if (weak && slot != 0) return;  // weak marks never overwrite
    slot = glyph;
  }

  char at(int ix, int iy) const { return marks[static_cast<std::size_t>(iy) * w + ix]; }
};

Overlay build_overlay(const OccupancyEnvironment& env, const Episode* episode,
                      const Trajectory* traj) {
  Overlay ov(env.width(), env.height());
  if (traj) {
    for (const Pose& p : traj->poses) ov.mark(env, p.x, p.y, '*');
  }
  if (episode) {
    for (const Vec3& wp : episode->reference_waypoints) ov.mark(env, wp.x, wp.y, 'W');
    ov.mark(env, episode->start.x, episode->start.y, 'S');
    ov.mark(env, episode->goal.x, episode->goal.y, 'G');
  }
  return ov;
}

char base_glyph(const Cell& c) {
  switch (c.kind) {
    case CellKind::Obstacle: return '#';
    case CellKind::Hole: return 'o';
    case CellKind::Free: break;
  }
  if (c.floor_z != 0.0) {
    const int digit = static_cast<int>(c.floor_z / 0.1 + 0.5);
    if (digit >= 1 && digit <= 9) return static_cast<char>('0' + digit);
  }
  return '.';
}

}  // namespace

std::string render_ascii(const OccupancyEnvironment& env, const Episode* episode,
                         const Trajectory* traj) {
  const Overlay ov = build_overlay(env, episode, traj);
  std::string out;
  out.reserve(static_cast<std::size_t>(env.height()) * (env.width() + 1));
  for (int iy = env.height() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < env.width(); ++ix) {
      const char m = ov.at(ix, iy);
      out += m ? m : base_glyph(env.cell(ix, iy));
    }
    out += '\n';
  }
  return out;
}

std::string render_pgm(const OccupancyEnvironment& env, const Episode* episode,
                       const Trajectory* traj) {
  const Overlay ov = build_overlay(env, episode, traj);
  std::string out = "P2\n" + std::to_string(env.width()) + " " + std::to_string(env.height()) + "\n255\n";
  for (int iy = env.height() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < env.width(); ++ix) {
      const Cell& c = env.cell(ix, iy);
      int v = 255;
      if (c.kind == CellKind::Obstacle) {
        v = 0;
      } else if (c.kind == CellKind::Hole) {
        v = 60;
      } else if (c.floor_z != 0.0) {
        v = 255 - static_cast<int>(c.floor_z * 100.0);  // higher floors darker
      }
      switch (ov.at(ix, iy)) {
        case '*': v = 128; break;
        case 'W': v = 96; break;
        case 'S': v = 32; break;
        case 'G': v = 200; break;
        default: break;
      }
      if (ix) out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace navbench
