// Limit-definition evaluators for the isoline quantities.
//
// Every quantity in isoline.hpp also has a definition as a limit of displaced
// intersections with nearby isolines. The functions here approximate those
// limits directly: intersections are located by bracketed root finding on the
// normal axis, difference quotients are symmetric, and one Richardson
// extrapolation level is applied. They deliberately avoid the closed forms,
// so agreement between the two routes is a meaningful cross-check.
#pragma once

#include <functional>

#include "isotrack/field.hpp"
#include "isotrack/isoline.hpp"

namespace isotrack {

/// Smooth tracked level d*(t); must satisfy level(t) == D(t, r) at the base
/// time of the query it is used with.
using LevelFn = std::function<double(double)>;

/// Ordinate (along the base-frame normal) of the intersection nearest to r
/// between the normal axis and the isoline of level level(t + dt) at time
/// t + dt. Throws NoIntersectionError if no root lies within the search
/// bracket.
double oracle_front_ordinate(const Field& field, double t, Vec2 r, double dt,
                             const LevelFn& level);

/// Same, for the isoline of the fixed level D(t, r).
double oracle_front_ordinate(const Field& field, double t, Vec2 r, double dt);

double oracle_front_speed(const Field& field, double t, Vec2 r);
double oracle_front_speed(const Field& field, double t, Vec2 r, const LevelFn& level);
double oracle_density(const Field& field, double t, Vec2 r);
double oracle_curvature(const Field& field, double t, Vec2 r);
double oracle_rotation_rate(const Field& field, double t, Vec2 r);
double oracle_front_accel(const Field& field, double t, Vec2 r);
double oracle_growth_evolution(const Field& field, double t, Vec2 r);
double oracle_growth_tangent(const Field& field, double t, Vec2 r);
double oracle_growth_normal(const Field& field, double t, Vec2 r);

/// All eight oracle values in one struct (frame from the field gradient).
IsolineQuantities oracle_quantities(const Field& field, double t, Vec2 r);

/// First-order expansion residuals of the isoline quantities under small
/// displacements. Each entry is the norm of the difference between the
/// displaced quantity and its linear prediction, and shrinks as the square of
/// the step for a twice continuously differentiable field.
struct ExpansionResiduals {
  double front_speed_tangent = 0.0;  // front speed along the tangent vs rotation_rate
  double front_speed_normal = 0.0;   // front speed along the normal vs growth_evolution
  double frame_tangent_n = 0.0;      // normal along the tangent vs curvature
  double frame_tangent_t = 0.0;      // tangent along the tangent vs curvature
  double frame_normal_n = 0.0;       // normal along the normal vs growth_tangent
  double frame_normal_t = 0.0;       // tangent along the normal vs growth_tangent
  double frame_time_n = 0.0;         // normal following the front vs rotation_rate
  double frame_time_t = 0.0;         // tangent following the front vs rotation_rate
};

ExpansionResiduals expansion_residuals(const Field& field, double t, Vec2 r,
                                       double ds, double dt);

}  // namespace isotrack
