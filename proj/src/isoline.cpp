#include "isotrack/isoline.hpp"

#include <cmath>

namespace isotrack {

Frame frenet_frame(const FieldJet& jet) {
  const double g = jet.grad.norm();
  if (g < kCriticalGradNorm)
    throw CriticalPointError("gradient vanishes: no isoline frame here");
  const Vec2 n = jet.grad / g;
  // tangent = normal rotated -90 degrees, so that normal = tangent.perp()
  return {{n.y, -n.x}, n};
}

IsolineQuantities quantities(const FieldJet& jet) {
  IsolineQuantities q;
  q.frame = frenet_frame(jet);
  const Vec2 n = q.frame.normal;
  const Vec2 tg = q.frame.tangent;

  q.density = jet.grad.norm();
  q.front_speed = -jet.dt / q.density;

  // First-order change of grad D when following the moving isoline point.
  const Vec2 w = jet.grad_dt + q.front_speed * (jet.hess * n);
  q.growth_evolution = dot(w, n) / q.density;
  q.rotation_rate = -dot(w, tg) / q.density;
  q.front_accel = -(jet.dtt + q.front_speed * dot(jet.grad_dt, n)) / q.density -
                  q.front_speed * q.growth_evolution;

  q.curvature = -dot(jet.hess * tg, tg) / q.density;
  q.growth_tangent = dot(jet.hess * n, tg) / q.density;
  q.growth_normal = dot(jet.hess * n, n) / q.density;
  return q;
}

double front_speed_for_level_rate(const IsolineQuantities& q, double level_rate) {
  return q.front_speed + level_rate / q.density;
}

IsolineRide on_isoline_kinematics(const IsolineQuantities& q, double speed, int side) {
  if (!(std::abs(q.front_speed) < speed))
    throw FrontTooFastError("isoline front is not slower than the vehicle");
  const double s = side >= 0 ? 1.0 : -1.0;
  const double vt = std::sqrt(speed * speed - q.front_speed * q.front_speed);
  IsolineRide ride;
  ride.velocity = q.front_speed * q.frame.normal + (s * vt) * q.frame.tangent;
  ride.turn_rate = 2.0 * q.rotation_rate + s * (q.front_accel / vt + q.curvature * vt);
  return ride;
}

}  // namespace isotrack
