#include "isotrack/vehicle.hpp"

#include <cmath>

namespace isotrack {

RobotState step(const RobotState& state, double u, const RobotParams& params, double dt) {
  if (!(std::abs(u) <= params.turn_rate_limit * (1.0 + 1e-12)))
    throw TurnRateError("commanded turn rate exceeds the configured limit");
  if (!(dt > 0.0)) throw Error("step size must be positive");

  const double v = params.speed;
  // theta is linear in time under constant u, so the RK4 stages use exact
  // headings at 0, dt/2 and dt.
  const double th0 = state.theta;
  const double th1 = state.theta + 0.5 * u * dt;
  const double th2 = state.theta + u * dt;

  RobotState out = state;
  out.x += dt * v * (std::cos(th0) + 4.0 * std::cos(th1) + std::cos(th2)) / 6.0;
  out.y += dt * v * (std::sin(th0) + 4.0 * std::sin(th1) + std::sin(th2)) / 6.0;
  out.theta += u * dt;
  return out;
}

RobotState integrate_constant(RobotState state, double u, const RobotParams& params,
                              double duration, double max_dt) {
  double remaining = duration;
  while (remaining > 1e-15) {
    const double dt = std::min(max_dt, remaining);
    state = step(state, u, params, dt);
    remaining -= dt;
  }
  return state;
}

Circle initial_circle_disc(const RobotState& state, const RobotParams& params, int side) {
  const double radius = params.speed / params.turn_rate_limit;
  const double s = side >= 0 ? 1.0 : -1.0;
  const Vec2 left = unit_from_angle(state.theta).perp();
  return {state.position() + (s * radius) * left, radius};
}

}  // namespace isotrack
