#pragma once

#include <cmath>

namespace navbench {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec2 xy() const { return {x, y}; }
};

inline double horizontal_distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double horizontal_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Normalizes an angle in degrees to [0, 360).
inline double wrap_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  return d;
}

// Signed shortest difference a - b in degrees, in (-180, 180].
inline double angle_difference(double a_deg, double b_deg) {
  double d = wrap_degrees(a_deg - b_deg);
  if (d > 180.0) d -= 360.0;
  return d;
}

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace navbench
