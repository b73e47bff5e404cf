#include "zest/prediction.hpp"

#include <cmath>
#include <stdexcept>

#include "zest/geometry.hpp"

namespace zest {

SeparationPrediction predict_min_separation(const VesselState& own, const VesselState& other,
                                            double horizon, double dt) {
  if (!(horizon > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("invalid prediction horizon");
  }
  const Vec2 dp = other.position() - own.position();
  const Vec2 dv = other.velocity() - own.velocity();
  const auto steps = static_cast<long>(std::floor(horizon / dt + 1e-9));
  SeparationPrediction best{norm(dp), 0.0};
  for (long i = 1; i <= steps; ++i) {
    const double tau = static_cast<double>(i) * dt;
    const double sep = norm(dp + tau * dv);
    if (sep < best.min_separation) {
      best.min_separation = sep;
      best.time_of_min = tau;
    }
  }
  return best;
}

}  // namespace zest
