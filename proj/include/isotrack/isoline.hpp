// Pointwise differential geometry of the moving isoline through (t, r).
#pragma once

#include "isotrack/errors.hpp"
#include "isotrack/field.hpp"
#include "isotrack/geom.hpp"

namespace isotrack {

/// Gradient norms below this threshold are treated as critical points.
inline constexpr double kCriticalGradNorm = 1e-9;

/// Frenet frame of the isoline: normal along the gradient, tangent chosen so
/// the region of greater field values lies to the left when traveling along
/// the tangent (normal = tangent rotated +90 degrees).
struct Frame {
  Vec2 tangent;
  Vec2 normal;
};

struct IsolineQuantities {
  double front_speed = 0.0;     // normal speed at which the isoline sweeps by
  double density = 0.0;         // |grad D|: field increment per unit normal distance
  double curvature = 0.0;       // signed curvature of the spatial isoline
  double rotation_rate = 0.0;   // angular velocity of the isoline tangent
  double front_accel = 0.0;     // rate of change of front_speed along the moving point
  double growth_evolution = 0.0;  // relative density growth in time, following the isoline
  double growth_tangent = 0.0;    // relative density growth along the tangent
  double growth_normal = 0.0;     // relative density growth along the normal
  Frame frame;
};

/// Throws CriticalPointError when |grad| < kCriticalGradNorm.
Frame frenet_frame(const FieldJet& jet);

/// All eight isoline quantities from the closed forms in terms of the jet.
/// For a time-independent field, front_speed, rotation_rate, front_accel and
/// growth_evolution all vanish.
IsolineQuantities quantities(const FieldJet& jet);

/// Front speed when the tracked level itself drifts at level_rate:
/// front_speed + level_rate / density.
double front_speed_for_level_rate(const IsolineQuantities& q, double level_rate);

struct IsolineRide {
  Vec2 velocity;     // the unique isoline-riding velocity for the chosen side
  double turn_rate;  // signed turn rate the vehicle must realize
};

/// Velocity and required turn rate of a vehicle of the given speed that stays
/// on the moving isoline. side = +1 travels along the tangent (greater values
/// left), side = -1 against it. Throws FrontTooFastError when the isoline
/// front is at least as fast as the vehicle.
IsolineRide on_isoline_kinematics(const IsolineQuantities& q, double speed, int side);

}  // namespace isotrack
