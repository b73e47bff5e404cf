#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "zest/apf.hpp"
#include "zest/prediction.hpp"

using namespace zest;

namespace {

// Central-difference gradient of a scalar field, the oracle for force checks.
template <typename Potential>
ForceVector neg_gradient(Potential&& U, Vec2 pos, double h) {
  const double fx = -(U({pos.x + h, pos.y}) - U({pos.x - h, pos.y})) / (2.0 * h);
  const double fy = -(U({pos.x, pos.y + h}) - U({pos.x, pos.y - h})) / (2.0 * h);
  return {fx, fy};
}

double rel_err(ForceVector a, ForceVector b) {
  const double scale = std::max(force_norm(a), force_norm(b));
  return force_norm({a.fx - b.fx, a.fy - b.fy}) / scale;
}

FieldParams small_field(double k_rep, double influence) {
  FieldParams fp;
  fp.k_rep = k_rep;
  fp.influence_radius = influence;
  fp.safety_radius = influence / 5.0;
  fp.min_distance = 0.05;
  fp.max_force = 1e9;
  return fp;
}

VesselState make_state(double x, double y, double psi, double u) {
  VesselState s;
  s.x = x;
  s.y = y;
  s.psi = wrap_angle(psi);
  s.u = u;
  return s;
}

}  // namespace

TEST_CASE("attractive potential and force: analytic values") {
  CHECK(attractive_potential({3.0, 4.0}, {3.0, 4.0}, 2.0) == 0.0);
  CHECK(attractive_potential({0.0, 0.0}, {3.0, 4.0}, 2.0) == doctest::Approx(25.0));
  // doubling the distance quadruples the potential
  CHECK(attractive_potential({0.0, 0.0}, {6.0, 8.0}, 2.0) == doctest::Approx(100.0));

  const ForceVector f = attractive_force({0.0, 0.0}, {3.0, 4.0}, 2.0);
  CHECK(f.fx == 6.0);
  CHECK(f.fy == 8.0);
  const ForceVector zero = attractive_force({3.0, 4.0}, {3.0, 4.0}, 2.0);
  CHECK(zero.fx == 0.0);
  CHECK(zero.fy == 0.0);
}

TEST_CASE("attractive force equals -grad U at random points") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> coord(-80.0, 80.0);
  const double k = 1.7;
  const Vec2 goal{12.0, -9.0};
  for (int i = 0; i < 100; ++i) {
    const Vec2 pos{coord(gen), coord(gen)};
    if (distance(pos, goal) < 1.0) continue;
    const ForceVector f = attractive_force(pos, goal, k);
    const ForceVector g =
        neg_gradient([&](Vec2 p) { return attractive_potential(p, goal, k); }, pos, 1e-4);
    CHECK(rel_err(f, g) < 1e-6);
  }
}

TEST_CASE("repulsive force: stated closed form") {
  const FieldParams fp = small_field(1.0, 10.0);

  SUBCASE("outside the influence radius the force is exactly zero") {
    const ForceVector f = repulsive_force({0.0, 0.0}, {11.0, 0.0}, fp);
    CHECK(f.fx == 0.0);
    CHECK(f.fy == 0.0);
  }
  SUBCASE("hand-evaluated magnitude at half influence, obstacle due north") {
    const ForceVector f = repulsive_force({0.0, 0.0}, {5.0, 0.0}, fp);
    CHECK(f.fx == doctest::Approx(-0.004).epsilon(1e-12));  // pushes south
    CHECK(f.fy == 0.0);
  }
  SUBCASE("coincident positions clamp to max force") {
    FieldParams capped = fp;
    capped.max_force = 100.0;
    const ForceVector f = repulsive_force({2.0, 2.0}, {2.0, 2.0}, capped);
    CHECK(std::isfinite(f.fx));
    CHECK(force_norm(f) == doctest::Approx(100.0));
  }
}

TEST_CASE("repulsive force equals -grad of the Khatib potential off clamp regions") {
  const FieldParams fp;  // defaults: k_rep 4e6, influence 40
  auto potential = [&](Vec2 p) {
    const double d = std::max(distance(p, Vec2{0.0, 0.0}), fp.min_distance);
    if (d > fp.influence_radius) return 0.0;
    const double term = 1.0 / d - 1.0 / fp.influence_radius;
    return 0.5 * fp.k_rep * term * term;
  };
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> radius(8.0, 35.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const double d = radius(gen);
    const double a = angle(gen);
    const Vec2 pos{d * std::cos(a), d * std::sin(a)};
    const ForceVector f = repulsive_force(pos, {0.0, 0.0}, fp);
    REQUIRE(force_norm(f) < fp.max_force);  // outside the clamp region
    const ForceVector g = neg_gradient(potential, pos, 1e-4);
    CHECK(rel_err(f, g) < 1e-6);
  }
}

TEST_CASE("predictive force: diverging tracks produce exactly zero") {
  const FieldParams fp;
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(-50, 0, kPi, 2.0);  // astern, sailing away
  const ForceVector f = predictive_force(own, other, fp);
  CHECK(f.fx == 0.0);
  CHECK(f.fy == 0.0);
}

TEST_CASE("predictive force: exact head-on deflects laterally to starboard") {
  const FieldParams fp;
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(50, 0, kPi, 2.0);
  const ForceVector f = predictive_force(own, other, fp);
  CHECK(f.fx == doctest::Approx(0.0).scale(1e4));
  CHECK(f.fy > 0.0);  // starboard of a north heading is east
}

TEST_CASE("predictive force scan agrees with a 10x finer brute-force scan") {
  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> pos(-80.0, 80.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> speed(0.5, 4.0);
  const double horizon = 60.0;
  const double dt = 0.1;
  for (int i = 0; i < 200; ++i) {
    const VesselState own = make_state(0, 0, angle(gen), speed(gen));
    const VesselState other = make_state(pos(gen), pos(gen), angle(gen), speed(gen));
    if (distance(own.position(), other.position()) < 1e-6) continue;
    const SeparationPrediction coarse = predict_min_separation(own, other, horizon, dt);
    const SeparationPrediction fine = predict_min_separation(own, other, horizon, dt / 10.0);
    const double rel_speed = norm(own.velocity() - other.velocity());
    CHECK(coarse.min_separation >= fine.min_separation - 1e-12);
    CHECK(coarse.min_separation - fine.min_separation <= rel_speed * dt + 1e-9);
  }
}

TEST_CASE("field params: wiring and validation") {
  VesselParams vessel;
  vessel.beam = 4.0;
  const FieldParams fp = make_field_params(vessel);
  CHECK(fp.safety_radius == 8.0);
  CHECK(fp.influence_radius == 40.0);

  vessel.beam = 3.0;
  CHECK(make_field_params(vessel).safety_radius == 6.0);

  FieldParams bad = fp;
  bad.influence_radius = 5.0;  // below safety radius
  CHECK_THROWS_AS(validate_field_params(bad), std::invalid_argument);
  bad = fp;
  bad.min_distance = -1.0;
  CHECK_THROWS_AS(validate_field_params(bad), std::invalid_argument);
}

TEST_CASE("colregs_field: stand-on beyond influence reduces to pure attraction") {
  const FieldParams fp;
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(-100, 80, kPi, 2.0);  // far and diverging
  const Vec2 goal{160.0, 0.0};
  const ForceVector field = colregs_field(own, other, EncounterType::StandOn, goal, fp);
  const ForceVector att = attractive_force(own.position(), goal, fp.k_att);
  CHECK(field.fx == att.fx);
  CHECK(field.fy == att.fy);
}

TEST_CASE("colregs_field: head-on bias is strictly starboard across ranges") {
  const FieldParams fp;
  const Vec2 goal{300.0, 0.0};
  for (double range = 5.0; range <= 39.0; range += 2.0) {
    const VesselState own = make_state(0, 0, 0, 2.0);
    const VesselState other = make_state(range, 0, kPi, 2.0);
    const ForceVector f = colregs_field(own, other, EncounterType::HeadOn, goal, fp);
    CHECK(dot({f.fx, f.fy}, starboard_dir(own.psi)) > 0.0);
  }
}

TEST_CASE("colregs_field: clear encounters are rejected") {
  const FieldParams fp;
  const VesselState own = make_state(0, 0, 0, 2.0);
  const VesselState other = make_state(50, 0, kPi, 2.0);
  CHECK_THROWS_AS(colregs_field(own, other, EncounterType::Clear, {100.0, 0.0}, fp),
                  std::invalid_argument);
}

TEST_CASE("property: every field output respects the force clamp") {
  const FieldParams fp;
  std::mt19937_64 gen(53);
  std::uniform_real_distribution<double> pos(-60.0, 60.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> speed(0.0, 4.0);
  const EncounterType kinds[] = {EncounterType::StaticObstacle, EncounterType::Overtaking,
                                 EncounterType::HeadOn, EncounterType::CrossingGiveWay,
                                 EncounterType::StandOn};
  for (int i = 0; i < 300; ++i) {
    const VesselState own = make_state(pos(gen), pos(gen), angle(gen), speed(gen));
    VesselState other = make_state(pos(gen), pos(gen), angle(gen), speed(gen));
    if (distance(own.position(), other.position()) < 1e-3) other.x += 5.0;
    const Vec2 goal{pos(gen), pos(gen)};
    CHECK(force_norm(repulsive_force(own.position(), other.position(), fp)) <=
          fp.max_force + 1e-9);
    CHECK(force_norm(predictive_force(own, other, fp)) <= fp.max_force + 1e-9);
    const EncounterType kind = kinds[i % 5];
    CHECK(force_norm(colregs_field(own, other, kind, goal, fp)) <= fp.max_force + 1e-9);
  }
}

TEST_CASE("property: repulsive and predictive terms vanish identically beyond influence") {
  const FieldParams fp;
  std::mt19937_64 gen(59);
  std::uniform_real_distribution<double> far(45.0, 400.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> speed(0.0, 4.0);
  int predictive_checked = 0;
  for (int i = 0; i < 300; ++i) {
    const double d = far(gen);
    const double a = angle(gen);
    const Vec2 obstacle{d * std::cos(a), d * std::sin(a)};
    const ForceVector rep = repulsive_force({0.0, 0.0}, obstacle, fp);
    CHECK(rep.fx == 0.0);
    CHECK(rep.fy == 0.0);

    const VesselState own = make_state(0, 0, angle(gen), speed(gen));
    const VesselState other = make_state(obstacle.x, obstacle.y, angle(gen), speed(gen));
    const SeparationPrediction pred =
        predict_min_separation(own, other, fp.predict_horizon, fp.scan_dt);
    if (pred.min_separation > fp.influence_radius) {
      const ForceVector f = predictive_force(own, other, fp);
      CHECK(f.fx == 0.0);
      CHECK(f.fy == 0.0);
      ++predictive_checked;
    }
  }
  CHECK(predictive_checked > 100);
}

TEST_CASE("force_to_guidance: heading, slowdown, and the zero-force error") {
  CHECK(force_to_guidance({1.0, 0.0}, EncounterType::StandOn, 2.5).desired_heading == 0.0);
  CHECK(force_to_guidance({0.0, 2.0}, EncounterType::StandOn, 2.5).desired_heading ==
        doctest::Approx(kPi / 2.0));
  CHECK(force_to_guidance({1.0, 0.0}, EncounterType::HeadOn, 2.5).desired_speed == 1.25);
  CHECK(force_to_guidance({1.0, 0.0}, EncounterType::Overtaking, 2.5).desired_speed == 1.25);
  CHECK(force_to_guidance({1.0, 0.0}, EncounterType::StandOn, 2.5).desired_speed == 2.5);
  CHECK(force_to_guidance({1.0, 0.0}, EncounterType::CrossingGiveWay, 2.5).desired_speed ==
        2.5);
  CHECK_THROWS_AS(force_to_guidance({0.0, 0.0}, EncounterType::HeadOn, 2.5),
                  std::invalid_argument);
}
