#include "zest/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zest {

PlanarPath make_path(std::vector<Vec2> samples, bool closed) {
  if (samples.size() < 2) {
    throw std::invalid_argument("invalid path: need at least 2 samples");
  }
  PlanarPath path;
  path.samples = std::move(samples);
  path.closed = closed;
  path.cumulative_arclength.resize(path.samples.size());
  path.cumulative_arclength[0] = 0.0;
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    const double seg = distance(path.samples[i], path.samples[i - 1]);
    if (!(seg > 0.0)) {
      throw std::invalid_argument("invalid path: repeated consecutive sample");
    }
    path.cumulative_arclength[i] = path.cumulative_arclength[i - 1] + seg;
  }
  if (closed && distance(path.samples.front(), path.samples.back()) > 1e-9) {
    throw std::invalid_argument("invalid path: closed path must end where it starts");
  }
  return path;
}

PlanarPath make_lemniscate_path(double amplitude, int n_samples) {
  if (!(amplitude > 0.0)) {
    throw std::invalid_argument("invalid path: amplitude must be positive");
  }
  if (n_samples < 16) {
    throw std::invalid_argument("path too coarse");
  }
  std::vector<Vec2> pts(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    const double s = std::sin(theta);
    pts[static_cast<std::size_t>(i)] = {amplitude * s, amplitude * s * std::cos(theta)};
  }
  pts.back() = pts.front();  // exact closure
  return make_path(std::move(pts), true);
}

namespace {

double wrap_s(const PlanarPath& path, double s) {
  const double total = path.total_length();
  if (path.closed) {
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
    return s;
  }
  return std::clamp(s, 0.0, total);
}

}  // namespace

Vec2 point_at(const PlanarPath& path, double s) {
  s = wrap_s(path, s);
  const auto& cum = path.cumulative_arclength;
  auto it = std::upper_bound(cum.begin(), cum.end(), s);
  std::size_t idx = static_cast<std::size_t>(std::distance(cum.begin(), it));
  if (idx == 0) idx = 1;
  if (idx >= cum.size()) idx = cum.size() - 1;
  const double seg_len = cum[idx] - cum[idx - 1];
  const double frac = (s - cum[idx - 1]) / seg_len;
  const Vec2 a = path.samples[idx - 1];
  const Vec2 b = path.samples[idx];
  return a + frac * (b - a);
}

namespace {

struct PathProjection {
  double distance = std::numeric_limits<double>::infinity();
  double s = 0.0;
};

PathProjection project_onto_path(const PlanarPath& path, Vec2 p) {
  PathProjection best;
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    const Vec2 a = path.samples[i - 1];
    const Vec2 b = path.samples[i];
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double tproj = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    const double d = distance(p, a + tproj * ab);
    if (d < best.distance) {
      best.distance = d;
      best.s = path.cumulative_arclength[i - 1] + tproj * std::sqrt(len2);
    }
  }
  return best;
}

}  // namespace

double cross_track_distance(const PlanarPath& path, Vec2 p) {
  return project_onto_path(path, p).distance;
}

double project_arclength(const PlanarPath& path, Vec2 p) {
  return project_onto_path(path, p).s;
}

VirtualTarget make_virtual_target(const PlanarPath& path, double s) {
  const double sw = wrap_s(path, s);
  return {sw, point_at(path, sw)};
}

VirtualTarget advance_virtual_target(const PlanarPath& path, const VirtualTarget& vt,
                                     const VesselState& vessel, double nominal_speed,
                                     double lag_limit, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("invalid timestep");
  }
  if (!(lag_limit > 0.0) || nominal_speed < 0.0) {
    throw std::invalid_argument("invalid virtual-target parameters");
  }
  const double d = distance(vessel.position(), vt.pos);
  const double factor = std::max(0.0, 1.0 - d / lag_limit);
  const double s_new = wrap_s(path, vt.s + nominal_speed * dt * factor);
  return {s_new, point_at(path, s_new)};
}

}  // namespace zest
