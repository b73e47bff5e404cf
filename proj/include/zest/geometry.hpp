#pragma once

#include <cmath>

namespace zest {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Planar vector in the local North-East frame: x north, y east [m].
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Wraps an angle to [-pi, pi). Used for stored headings.
inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

// Wraps an angle to (-pi, pi]. Used for bearings and heading errors.
inline double wrap_signed(double a) { return -wrap_angle(-a); }

// Unit vector of a compass heading (clockwise from north).
inline Vec2 heading_dir(double psi) { return {std::cos(psi), std::sin(psi)}; }

// Unit vector pointing to starboard of a heading.
inline Vec2 starboard_dir(double psi) { return {-std::sin(psi), std::cos(psi)}; }

}  // namespace zest
