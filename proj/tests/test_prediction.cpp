#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "zest/prediction.hpp"
#include "zest/simulator.hpp"

using namespace zest;

namespace {

VesselState make_state(double x, double y, double psi, double u) {
  VesselState s;
  s.x = x;
  s.y = y;
  s.psi = wrap_angle(psi);
  s.u = u;
  return s;
}

}  // namespace

TEST_CASE("predict_min_separation: parallel tracks hold their spacing") {
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(0, 20, 0, 2.0);
  const SeparationPrediction p = predict_min_separation(own, other, 60.0, 0.1);
  CHECK(p.min_separation == 20.0);
  CHECK(p.time_of_min == 0.0);  // ties keep the earliest time
}

TEST_CASE("predict_min_separation: head-on closure to contact") {
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(50, 0, kPi, 2.0);
  const SeparationPrediction p = predict_min_separation(own, other, 60.0, 0.1);
  CHECK(p.min_separation == doctest::Approx(0.0).scale(50.0));
  CHECK(p.time_of_min == doctest::Approx(12.5));
}

TEST_CASE("predict_min_separation: oblique crossing matches the brute-force oracle") {
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(60, 50, -kPi / 2.0, 2.0);
  const SeparationPrediction p = predict_min_separation(own, other, 60.0, 0.1);

  // brute-force fine-grid scan, written independently of the implementation
  double best = 1e300;
  double best_t = 0.0;
  for (int i = 0; i <= 600000; ++i) {
    const double tau = i * 1e-4;
    const double dx = 60.0 - 2.0 * tau;
    const double dy = 50.0 - 2.0 * tau;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d < best) {
      best = d;
      best_t = tau;
    }
  }
  CHECK(best == doctest::Approx(std::sqrt(50.0)).epsilon(1e-6));
  CHECK(best_t == doctest::Approx(27.5).epsilon(1e-4));
  CHECK(p.min_separation == doctest::Approx(std::sqrt(50.0)).epsilon(1e-9));
  CHECK(p.time_of_min == doctest::Approx(27.5).epsilon(1e-9));
}

TEST_CASE("predict_min_separation: parameter validation") {
  const VesselState a = make_state(0, 0, 0, 1.0);
  const VesselState b = make_state(10, 0, 0, 1.0);
  CHECK_THROWS_AS(predict_min_separation(a, b, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(predict_min_separation(a, b, 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("sense: zero noise reproduces the truth exactly") {
  VesselState truth = make_state(12.5, -3.25, 0.75, 2.1);
  truth.r = 0.05;
  GaussianRng rng(99);
  const SensorReading reading = sense(truth, NoiseConfig{}, rng, 0.3);
  CHECK(reading.gps.x == truth.x);
  CHECK(reading.gps.y == truth.y);
  CHECK(reading.compass == truth.psi);
  CHECK(reading.imu_yaw_rate == truth.r);
  CHECK(reading.imu_surge_accel == 0.3);
}

TEST_CASE("sense: same seed and call order give identical readings") {
  const VesselState truth = make_state(1, 2, 0.3, 1.5);
  NoiseConfig noise;
  noise.gps = 0.5;
  noise.compass = 0.01;
  noise.imu_yaw_rate = 0.002;
  GaussianRng rng_a(1234);
  GaussianRng rng_b(1234);
  for (int i = 0; i < 100; ++i) {
    const SensorReading a = sense(truth, noise, rng_a);
    const SensorReading b = sense(truth, noise, rng_b);
    CHECK(a.gps.x == b.gps.x);
    CHECK(a.gps.y == b.gps.y);
    CHECK(a.compass == b.compass);
    CHECK(a.imu_yaw_rate == b.imu_yaw_rate);
  }
}

TEST_CASE("sense: unit-std gps noise has sample std within [0.98, 1.02]") {
  const VesselState truth = make_state(0, 0, 0, 0);
  NoiseConfig noise;
  noise.gps = 1.0;
  GaussianRng rng(2024);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sense(truth, noise, rng).gps.x;
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double sample_std = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
  CHECK(sample_std > 0.98);
  CHECK(sample_std < 1.02);
  CHECK(std::abs(mean) < 0.02);
}

TEST_CASE("sense: compass reading stays wrapped") {
  VesselState truth = make_state(0, 0, 3.1, 0);
  NoiseConfig noise;
  noise.compass = 0.5;
  GaussianRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double c = sense(truth, noise, rng).compass;
    CHECK(c >= -kPi);
    CHECK(c < kPi);
  }
}
