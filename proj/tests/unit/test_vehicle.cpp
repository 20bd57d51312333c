#include <cmath>

#include "doctest.h"
#include "isotrack/rng.hpp"
#include "isotrack/vehicle.hpp"

using namespace isotrack;

namespace {

constexpr double kPi = 3.14159265358979323846;

// exact pose after holding a turn rate for dt
RobotState arc_solution(const RobotState& s, double u, double v, double dt) {
  RobotState out = s;
  out.theta = s.theta + u * dt;
  if (u == 0.0) {
    out.x = s.x + v * dt * std::cos(s.theta);
    out.y = s.y + v * dt * std::sin(s.theta);
  } else {
    out.x = s.x + (v / u) * (std::sin(out.theta) - std::sin(s.theta));
    out.y = s.y - (v / u) * (std::cos(out.theta) - std::cos(s.theta));
  }
  return out;
}

}  // namespace

TEST_CASE("straight line at unit speed") {
  const RobotState next = step({0, 0, 0}, 0.0, {1.0, 1.0}, 1.0);
  CHECK(next.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(next.y == doctest::Approx(0.0));
  CHECK(next.theta == doctest::Approx(0.0));
}

TEST_CASE("half circle of radius one") {
  const RobotParams params{1.0, 1.0};
  const RobotState end = integrate_constant({0, 0, 0}, 1.0, params, kPi, 1e-3);
  CHECK(std::abs(end.x - 0.0) < 1e-10);
  CHECK(std::abs(end.y - 2.0) < 1e-10);
  CHECK(std::abs(end.theta - kPi) < 1e-12);
}

TEST_CASE("random steps match the closed-form arc") {
  Rng rng(17);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const RobotParams params{rng.uniform(0.2, 2.0), 2.0};
    RobotState s{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-7, 7)};
    const double u = rng.uniform(-2.0, 2.0);
    const RobotState got = step(s, u, params, 1e-2);
    const RobotState want = arc_solution(s, u, params.speed, 1e-2);
    worst = std::max({worst, std::abs(got.x - want.x), std::abs(got.y - want.y),
                      std::abs(got.theta - want.theta)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("turn rates beyond the limit are rejected, boundary accepted") {
  const RobotParams params{1.0, 1.5};
  CHECK_THROWS_AS(step({0, 0, 0}, 1.6, params, 0.1), TurnRateError);
  CHECK_THROWS_AS(step({0, 0, 0}, -1.5000001, params, 0.1), TurnRateError);
  CHECK_NOTHROW(step({0, 0, 0}, 1.5, params, 0.1));
  CHECK_THROWS_AS(step({0, 0, 0}, 0.0, params, 0.0), Error);
}

TEST_CASE("speed conservation per step") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const RobotParams params{rng.uniform(0.5, 3.0), 2.0};
    const RobotState s{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-7, 7)};
    const double u = rng.uniform(-2.0, 2.0);
    const double dt = rng.uniform(1e-4, 5e-2);
    const RobotState n = step(s, u, params, dt);
    const double hop = (n.position() - s.position()).norm();
    CHECK(hop <= params.speed * dt + 1e-9);
    if (u == 0.0) CHECK(hop == doctest::Approx(params.speed * dt).epsilon(1e-12));
  }
  // equality along straight segments
  const RobotState n = step({0, 0, 0.7}, 0.0, {1.3, 1.0}, 0.02);
  CHECK((n.position() - Vec2{0, 0}).norm() == doctest::Approx(1.3 * 0.02).epsilon(1e-12));
}

TEST_CASE("rotational equivariance of trajectories") {
  Rng rng(29);
  const RobotParams params{1.0, 2.0};
  const double beta = 0.83;
  RobotState a{0.2, -0.4, 0.3};
  RobotState b{0.0, 0.0, a.theta + beta};
  const Vec2 pivot{a.x, a.y};
  b.x = pivot.x;
  b.y = pivot.y;
  for (int i = 0; i < 200; ++i) {
    const double u = rng.uniform(-2.0, 2.0);
    a = step(a, u, params, 1e-2);
    b = step(b, u, params, 1e-2);
  }
  const Vec2 rotated_a = pivot + rotated(a.position() - pivot, beta);
  CHECK((rotated_a - b.position()).norm() < 1e-10);
  CHECK(b.theta - a.theta == doctest::Approx(beta).epsilon(1e-12));
}

TEST_CASE("heading integrates the turn rate exactly") {
  Rng rng(37);
  RobotState s{0, 0, 0.5};
  const RobotParams params{1.0, 3.0};
  double integral = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-3.0, 3.0);
    s = step(s, u, params, 1e-3);
    integral += u * 1e-3;
  }
  CHECK(std::abs(s.theta - 0.5 - integral) < 1e-9);
}

TEST_CASE("initial turning circles") {
  const Circle left = initial_circle_disc({0, 0, 0}, {1.0, 1.0}, +1);
  CHECK(left.center.x == doctest::Approx(0.0));
  CHECK(left.center.y == doctest::Approx(1.0));
  CHECK(left.radius == doctest::Approx(1.0));

  const Circle right = initial_circle_disc({0, 0, kPi / 2}, {2.0, 1.0}, -1);
  CHECK(right.center.x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(right.center.y == doctest::Approx(0.0));
  CHECK(right.radius == doctest::Approx(2.0));
}

TEST_CASE("a full saturated revolution stays on its circle") {
  const RobotParams params{1.3, 0.9};
  const RobotState start{0.4, -0.2, 1.1};
  const Circle circle = initial_circle_disc(start, params, +1);
  RobotState s = start;
  const double period = 2.0 * kPi / params.turn_rate_limit;
  const int n = 7000;
  for (int i = 0; i < n; ++i) {
    s = step(s, params.turn_rate_limit, params, period / n);
    CHECK((s.position() - circle.center).norm() <= circle.radius + 1e-9);
  }
  CHECK((s.position() - start.position()).norm() < 1e-9);
}
