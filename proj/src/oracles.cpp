#include "isotrack/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace isotrack {

namespace {

// Fixed tuning of the limit evaluators. The base steps balance truncation
// against root-finder noise; they are deliberately not per-call parameters.
constexpr double kTimeStep = 1e-4;     // base step for time-limit quotients
constexpr double kSpaceStep = 1e-4;    // base step for spatial quotients
constexpr double kLevelStepRel = 1e-4; // level increment, scaled by local density
constexpr double kBisectTol = 1e-12;   // bracket width at which bisection stops
constexpr int kScanIntervals = 32;     // sub-intervals per side when bracketing

struct Line {
  Vec2 origin;
  Vec2 dir;  // unit
};

// g(p) = D(t, origin + p*dir) - target
double line_value(const Field& field, double t, const Line& line, double p,
                  double target) {
  return field.value(t, line.origin + p * line.dir) - target;
}

// Root of g nearest to p = 0 inside [-span, span]. Scans outward from the
// center so the first sign change found is the nearest one, bisects it down
// to kBisectTol, then applies a few secant steps: the downstream difference
// quotients divide by the step, so the root itself must be sharp to near
// machine precision.
double nearest_root(const Field& field, double t, const Line& line, double target,
                    double span) {
  const double g0 = line_value(field, t, line, 0.0, target);
  if (g0 == 0.0) return 0.0;

  const double h = span / kScanIntervals;
  double lo = 0.0, hi = 0.0, glo = 0.0, ghi = 0.0;
  bool found = false;
  double prev_pos = g0, prev_neg = g0;
  for (int i = 1; i <= kScanIntervals && !found; ++i) {
    const double p = i * h;
    const double gp = line_value(field, t, line, p, target);
    if (gp == 0.0) return p;
    if ((gp > 0.0) != (prev_pos > 0.0)) {
      lo = (i - 1) * h; hi = p; glo = prev_pos; ghi = gp;
      found = true;
      break;
    }
    prev_pos = gp;
    const double gn = line_value(field, t, line, -p, target);
    if (gn == 0.0) return -p;
    if ((gn > 0.0) != (prev_neg > 0.0)) {
      lo = -p; hi = -(i - 1) * h; glo = gn; ghi = prev_neg;
      found = true;
      break;
    }
    prev_neg = gn;
  }
  if (!found)
    throw NoIntersectionError("no isoline intersection within the search bracket");

  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = line_value(field, t, line, mid, target);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) { lo = mid; glo = gm; }
    else { hi = mid; ghi = gm; }
  }
  // secant polish inside the final bracket
  double a = lo, b = hi, ga = glo, gb = ghi;
  for (int i = 0; i < 3; ++i) {
    if (gb == ga) break;
    const double c = b - gb * (b - a) / (gb - ga);
    if (!(c >= lo && c <= hi)) break;
    const double gc = line_value(field, t, line, c, target);
    a = b; ga = gb; b = c; gb = gc;
    if (gc == 0.0) break;
  }
  return b;
}

double richardson(double coarse, double fine) {
  return (4.0 * fine - coarse) / 3.0;
}

// Search span for the front ordinate, from the scale of the expected motion.
double front_span(const Field& field, double t, Vec2 r, double dt,
                  const LevelFn* level) {
  const FieldJet jet = field.jet(t, r);
  const IsolineQuantities q = quantities(jet);
  double speed_scale = std::abs(q.front_speed);
  if (level) {
    const double rate = ((*level)(t + 1e-6) - (*level)(t - 1e-6)) / 2e-6;
    speed_scale += std::abs(rate) / q.density;
  }
  return std::max(10.0 * speed_scale, 1.0) * std::abs(dt) * 10.0;
}

double front_ordinate_impl(const Field& field, double t, Vec2 r, double dt,
                           const LevelFn* level) {
  const Frame frame = frenet_frame(field.jet(t, r));
  const double target = level ? (*level)(t + dt) : field.value(t, r);
  const Line axis{r, frame.normal};
  return nearest_root(field, t + dt, axis, target, front_span(field, t, r, dt, level));
}

// Symmetric quotient of the front ordinate at step h.
double front_speed_quotient(const Field& field, double t, Vec2 r, double h,
                            const LevelFn* level) {
  const double fwd = front_ordinate_impl(field, t, r, h, level);
  const double bwd = front_ordinate_impl(field, t, r, -h, level);
  return (fwd - bwd) / (2.0 * h);
}

double front_speed_impl(const Field& field, double t, Vec2 r, const LevelFn* level) {
  return richardson(front_speed_quotient(field, t, r, kTimeStep, level),
                    front_speed_quotient(field, t, r, kTimeStep / 2.0, level));
}

// Ordinate of the intersection with the isoline of level d* + dd at the same
// time (density definition).
double level_ordinate(const Field& field, double t, Vec2 r, double dd,
                      double density_scale) {
  const Frame frame = frenet_frame(field.jet(t, r));
  const double target = field.value(t, r) + dd;
  const Line axis{r, frame.normal};
  const double span = 10.0 * std::abs(dd) / density_scale;
  return nearest_root(field, t, axis, target, span);
}

double density_quotient(const Field& field, double t, Vec2 r, double dd,
                        double density_scale) {
  const double fwd = level_ordinate(field, t, r, dd, density_scale);
  const double bwd = level_ordinate(field, t, r, -dd, density_scale);
  return 2.0 * dd / (fwd - bwd);
}

double density_impl(const Field& field, double t, Vec2 r) {
  // |grad| sets the level increment scale only; the estimate itself comes
  // from the root-found ordinates.
  const double scale = field.jet(t, r).grad.norm();
  const double dd = kLevelStepRel * scale;
  return richardson(density_quotient(field, t, r, dd, scale),
                    density_quotient(field, t, r, dd / 2.0, scale));
}

// Angle of the isoline tangent at (tq, point), measured in the frame at the
// base query (t, r). Zero when the tangents agree.
double tangent_angle_in(const Frame& base, const Field& field, double tq, Vec2 point) {
  const Frame f = frenet_frame(field.jet(tq, point));
  return std::atan2(dot(f.tangent, base.normal), dot(f.tangent, base.tangent));
}

double rotation_quotient(const Field& field, double t, Vec2 r, const Frame& base,
                         double h) {
  const Vec2 fwd = r + front_ordinate_impl(field, t, r, h, nullptr) * base.normal;
  const Vec2 bwd = r + front_ordinate_impl(field, t, r, -h, nullptr) * base.normal;
  const double dphi =
      tangent_angle_in(base, field, t + h, fwd) - tangent_angle_in(base, field, t - h, bwd);
  return dphi / (2.0 * h);
}

// Point on the isoline reached by moving ds along the base tangent and
// projecting back along the base normal.
Vec2 isoline_point(const Field& field, double t, Vec2 r, const Frame& base, double ds) {
  const Vec2 moved = r + ds * base.tangent;
  const Line axis{moved, base.normal};
  const double q = nearest_root(field, t, axis, field.value(t, r), std::abs(ds));
  return moved + q * axis.dir;
}

double curvature_quotient(const Field& field, double t, Vec2 r, const Frame& base,
                          double ds) {
  const double fwd = tangent_angle_in(base, field, t, isoline_point(field, t, r, base, ds));
  const double bwd = tangent_angle_in(base, field, t, isoline_point(field, t, r, base, -ds));
  return (fwd - bwd) / (2.0 * ds);
}

double front_accel_quotient(const Field& field, double t, Vec2 r, const Frame& base,
                            double h) {
  const Vec2 fwd = r + front_ordinate_impl(field, t, r, h, nullptr) * base.normal;
  const Vec2 bwd = r + front_ordinate_impl(field, t, r, -h, nullptr) * base.normal;
  // inner front speeds come from the same limit machinery, not the formulas
  return (front_speed_impl(field, t + h, fwd, nullptr) -
          front_speed_impl(field, t - h, bwd, nullptr)) /
         (2.0 * h);
}

double growth_evolution_quotient(const Field& field, double t, Vec2 r,
                                 const Frame& base, double rho0, double h) {
  const Vec2 fwd = r + front_ordinate_impl(field, t, r, h, nullptr) * base.normal;
  const Vec2 bwd = r + front_ordinate_impl(field, t, r, -h, nullptr) * base.normal;
  return (density_impl(field, t + h, fwd) - density_impl(field, t - h, bwd)) /
         (2.0 * h * rho0);
}

double growth_along_quotient(const Field& field, double t, Vec2 r, Vec2 dir,
                             double rho0, double ds) {
  return (density_impl(field, t, r + ds * dir) - density_impl(field, t, r - ds * dir)) /
         (2.0 * ds * rho0);
}

}  // namespace

double oracle_front_ordinate(const Field& field, double t, Vec2 r, double dt,
                             const LevelFn& level) {
  return front_ordinate_impl(field, t, r, dt, &level);
}

double oracle_front_ordinate(const Field& field, double t, Vec2 r, double dt) {
  return front_ordinate_impl(field, t, r, dt, nullptr);
}

double oracle_front_speed(const Field& field, double t, Vec2 r) {
  return front_speed_impl(field, t, r, nullptr);
}

double oracle_front_speed(const Field& field, double t, Vec2 r, const LevelFn& level) {
  return front_speed_impl(field, t, r, &level);
}

double oracle_density(const Field& field, double t, Vec2 r) {
  return density_impl(field, t, r);
}

double oracle_curvature(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  return richardson(curvature_quotient(field, t, r, base, kSpaceStep),
                    curvature_quotient(field, t, r, base, kSpaceStep / 2.0));
}

double oracle_rotation_rate(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  return richardson(rotation_quotient(field, t, r, base, kTimeStep),
                    rotation_quotient(field, t, r, base, kTimeStep / 2.0));
}

double oracle_front_accel(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  return richardson(front_accel_quotient(field, t, r, base, kTimeStep),
                    front_accel_quotient(field, t, r, base, kTimeStep / 2.0));
}

double oracle_growth_evolution(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  const double rho0 = density_impl(field, t, r);
  return richardson(growth_evolution_quotient(field, t, r, base, rho0, kTimeStep),
                    growth_evolution_quotient(field, t, r, base, rho0, kTimeStep / 2.0));
}

double oracle_growth_tangent(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  const double rho0 = density_impl(field, t, r);
  return richardson(growth_along_quotient(field, t, r, base.tangent, rho0, kSpaceStep),
                    growth_along_quotient(field, t, r, base.tangent, rho0, kSpaceStep / 2.0));
}

double oracle_growth_normal(const Field& field, double t, Vec2 r) {
  const Frame base = frenet_frame(field.jet(t, r));
  const double rho0 = density_impl(field, t, r);
  return richardson(growth_along_quotient(field, t, r, base.normal, rho0, kSpaceStep),
                    growth_along_quotient(field, t, r, base.normal, rho0, kSpaceStep / 2.0));
}

IsolineQuantities oracle_quantities(const Field& field, double t, Vec2 r) {
  IsolineQuantities q;
  q.frame = frenet_frame(field.jet(t, r));
  q.front_speed = oracle_front_speed(field, t, r);
  q.density = oracle_density(field, t, r);
  q.curvature = oracle_curvature(field, t, r);
  q.rotation_rate = oracle_rotation_rate(field, t, r);
  q.front_accel = oracle_front_accel(field, t, r);
  q.growth_evolution = oracle_growth_evolution(field, t, r);
  q.growth_tangent = oracle_growth_tangent(field, t, r);
  q.growth_normal = oracle_growth_normal(field, t, r);
  return q;
}

ExpansionResiduals expansion_residuals(const Field& field, double t, Vec2 r,
                                       double ds, double dt) {
  const IsolineQuantities q = quantities(field.jet(t, r));
  const Vec2 n = q.frame.normal;
  const Vec2 tg = q.frame.tangent;

  const auto q_at = [&](double tq, Vec2 p) { return quantities(field.jet(tq, p)); };

  ExpansionResiduals res;
  {
    const IsolineQuantities qt = q_at(t, r + ds * tg);
    res.front_speed_tangent =
        std::abs(qt.front_speed - (q.front_speed + q.rotation_rate * ds));
    res.frame_tangent_n = (qt.frame.normal - (n - (q.curvature * ds) * tg)).norm();
    res.frame_tangent_t = (qt.frame.tangent - (tg + (q.curvature * ds) * n)).norm();
  }
  {
    const IsolineQuantities qn = q_at(t, r + ds * n);
    res.front_speed_normal =
        std::abs(qn.front_speed - (q.front_speed - q.growth_evolution * ds));
    res.frame_normal_n = (qn.frame.normal - (n + (q.growth_tangent * ds) * tg)).norm();
    res.frame_normal_t = (qn.frame.tangent - (tg - (q.growth_tangent * ds) * n)).norm();
  }
  {
    const Vec2 moved = r + oracle_front_ordinate(field, t, r, dt) * n;
    const IsolineQuantities qf = q_at(t + dt, moved);
    res.frame_time_n = (qf.frame.normal - (n - (q.rotation_rate * dt) * tg)).norm();
    res.frame_time_t = (qf.frame.tangent - (tg + (q.rotation_rate * dt) * n)).norm();
  }
  return res;
}

}  // namespace isotrack
