// Constant-speed unicycle kinematics under a bounded turn rate.
#pragma once

#include "isotrack/errors.hpp"
#include "isotrack/geom.hpp"

namespace isotrack {

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // stored unwrapped; wrap only for reporting

  Vec2 position() const { return {x, y}; }
};

struct RobotParams {
  double speed = 1.0;            // v > 0
  double turn_rate_limit = 1.0;  // >= 0; zero means the vehicle cannot steer
};

/// One fixed step of the kinematics with the turn rate held constant:
/// classical fourth-order Runge-Kutta. A commanded rate beyond the limit is
/// an error, not a clamp. dt must be positive.
RobotState step(const RobotState& state, double u, const RobotParams& params, double dt);

/// Integrate a constant turn rate over a duration using uniform steps of at
/// most max_dt (the final step absorbs the remainder).
RobotState integrate_constant(RobotState state, double u, const RobotParams& params,
                              double duration, double max_dt);

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Circle traced when the turn rate saturates at +limit (side = +1, left
/// turn) or -limit (side = -1) from the given state; radius speed/limit.
Circle initial_circle_disc(const RobotState& state, const RobotParams& params, int side);

}  // namespace isotrack
