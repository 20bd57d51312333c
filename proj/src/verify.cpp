#include "isotrack/verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace isotrack {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sqr(double x) { return x * x; }

}  // namespace

FeasibilityReport check_tuning_inequalities(const FieldBounds& b, const RobotParams& robot,
                                      const ControllerParams& ctrl) {
  const double v = robot.speed;
  const double mu = ctrl.rate_cap();
  const double mu_star = b.max_inv_density * mu;
  const double dl = b.front_speed_margin;
  const double cap = std::sqrt(v * v + dl * dl) - v;
  const double radicand = dl * dl - 2.0 * v * mu_star - mu_star * mu_star;
  const double sigma = std::sqrt(radicand);
  const double lhs =
      (3.0 * b.max_growth_tangent +
       (b.max_curvature + 2.0 * b.max_growth_evolution + ctrl.gain +
        b.max_growth_normal * mu_star) / sigma +
       b.max_front_accel / (sigma * sigma * sigma)) * mu_star;

  FeasibilityReport rep;
  rep.add_lower("limit.mu_star_positive", mu_star, 0.0, true);
  rep.add_upper("limit.mu_star_upper", mu_star, cap, true);
  rep.add_lower("limit.sigma_radicand", radicand, 0.0, true);
  rep.add_upper("limit.turn", lhs, b.turn_rate_margin, true);
  rep.set_derived("mu", mu);
  rep.set_derived("mu_star", mu_star);
  rep.set_derived("sigma", sigma);
  return rep;
}

double semistrip_bound(double zeta, const FieldBounds& b, const RobotParams& robot,
                       double gain) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw Error("semistrip zeta must lie in (0, 1)");
  if (!(gain > 0.0)) throw Error("semistrip needs a positive gain");
  const double v = robot.speed;
  const double dl = b.front_speed_margin;
  const double du = b.turn_rate_margin;
  if (!(du > 0.0)) return 0.0;

  const double root1m = std::sqrt(1.0 - zeta);
  const double sigma_floor = dl * root1m;
  // lhs(mu) = quad*mu^2 + lin*mu with the sigma terms frozen at their floor
  const double quad = b.max_growth_normal / sigma_floor;
  const double lin = 3.0 * b.max_growth_tangent +
                     (b.max_curvature + 2.0 * b.max_growth_evolution + gain) / sigma_floor +
                     b.max_front_accel / (sigma_floor * sigma_floor * sigma_floor);
  double root;
  if (quad > 0.0)
    root = (-lin + std::sqrt(lin * lin + 4.0 * quad * du)) / (2.0 * quad);
  else
    root = du / lin;
  const double strip_cap = std::sqrt(v * v + zeta * dl * dl) - v;
  return std::min(root, strip_cap);
}

FeasibilityReport check_riding_limits(const IsolineQuantities& q, const RobotParams& robot) {
  FeasibilityReport rep;
  const double v = robot.speed;
  rep.add_upper("speed", std::abs(q.front_speed), v, false);
  if (std::abs(q.front_speed) < v) {
    const double vt = std::sqrt(v * v - sqr(q.front_speed));
    const double common = q.front_accel / vt + q.curvature * vt;
    rep.add_upper("accel.pos", std::abs(2.0 * q.rotation_rate + common),
                  robot.turn_rate_limit, false);
    rep.add_upper("accel.neg", std::abs(-2.0 * q.rotation_rate + common),
                  robot.turn_rate_limit, false);
  } else {
    rep.add_upper("accel.pos", kInf, robot.turn_rate_limit, false);
    rep.add_upper("accel.neg", kInf, robot.turn_rate_limit, false);
    rep.notes.push_back("riding turn rate undefined: the front is not slower than the vehicle");
  }
  return rep;
}

ZoneScan scan_zone(const Field& field, const OperationalZone& zone,
                   const RobotParams& robot, const GridSpec& grid,
                   double required_max_inv_density) {
  if (grid.nx < 2 || grid.ny < 2 || grid.nt < 1)
    throw Error("zone scan grid is degenerate");

  ZoneScan scan;
  double max_speed = 0.0, max_tau = 0.0, max_n = 0.0, max_kappa = 0.0;
  double max_vrho = 0.0, max_alpha = 0.0, max_ride = 0.0;
  bool front_too_fast = false;

  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.nt == 1
                         ? grid.t_min
                         : grid.t_min + (grid.t_max - grid.t_min) * it / (grid.nt - 1);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1);
      for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.y_min + (grid.y_max - grid.y_min) * iy / (grid.ny - 1);
        FieldJet jet;
        try {
          jet = field.jet(t, {x, y});
        } catch (const FieldDomainError&) {
          continue;  // grid corners may fall outside a partially defined field
        }
        if (!zone.contains(jet.value)) continue;
        ++scan.samples_in_zone;
        const IsolineQuantities q = quantities(jet);  // critical points propagate
        scan.min_density = std::min(scan.min_density, q.density);
        max_speed = std::max(max_speed, std::abs(q.front_speed));
        max_tau = std::max(max_tau, std::abs(q.growth_tangent));
        max_n = std::max(max_n, std::abs(q.growth_normal));
        max_kappa = std::max(max_kappa, std::abs(q.curvature));
        max_vrho = std::max(max_vrho, std::abs(q.growth_evolution));
        max_alpha = std::max(max_alpha, std::abs(q.front_accel));
        if (std::abs(q.front_speed) < robot.speed) {
          const double vt = std::sqrt(sqr(robot.speed) - sqr(q.front_speed));
          const double common = q.front_accel / vt + q.curvature * vt;
          max_ride = std::max({max_ride, std::abs(2.0 * q.rotation_rate + common),
                               std::abs(-2.0 * q.rotation_rate + common)});
        } else {
          front_too_fast = true;
        }
        if (required_max_inv_density > 0.0 &&
            q.density < 1.0 / required_max_inv_density)
          scan.density_floor_violated = true;
      }
    }
  }
  if (scan.samples_in_zone == 0)
    throw Error("zone scan found no grid samples inside the zone");

  scan.bounds.max_inv_density = 1.0 / scan.min_density;
  scan.bounds.max_front_speed = max_speed;
  scan.bounds.max_growth_tangent = max_tau;
  scan.bounds.max_growth_normal = max_n;
  scan.bounds.max_curvature = max_kappa;
  scan.bounds.max_growth_evolution = max_vrho;
  scan.bounds.max_front_accel = max_alpha;
  scan.bounds.front_speed_margin = robot.speed - max_speed;
  scan.bounds.turn_rate_margin =
      front_too_fast ? -kInf : robot.turn_rate_limit - max_ride;
  return scan;
}

FeasibilityReport check_initial_phase(const Field& field, const RobotState& initial,
                                    const RobotParams& robot, const OperationalZone& zone,
                                    int k_max, double sample_dt) {
  FeasibilityReport rep;
  const Circle discs[2] = {initial_circle_disc(initial, robot, +1),
                           initial_circle_disc(initial, robot, -1)};
  const Vec2 r_in = initial.position();

  int found_k = 0;
  double found_rotation = 0.0, found_net = 0.0, found_slack = 0.0;
  double last_rotation = 0.0, last_net = 0.0, last_slack = 0.0;

  for (int k = 1; k <= k_max; ++k) {
    const double horizon = 2.0 * kPi * k / robot.turn_rate_limit;
    const int nt = std::max(2, static_cast<int>(std::ceil(horizon / sample_dt)) + 1);

    // (a) total variation of the gradient direction at the initial position
    double rotation = 0.0, net = 0.0;
    double prev_angle = 0.0;
    bool have_prev = false, degenerate = false;
    for (int i = 0; i < nt; ++i) {
      const double t = horizon * i / (nt - 1);
      const Vec2 g = field.jet(t, r_in).grad;
      if (g.norm() < kCriticalGradNorm) { degenerate = true; break; }
      const double a = std::atan2(g.y, g.x);
      if (have_prev) {
        const double da = wrap_pi(a - prev_angle);
        rotation += std::abs(da);
        net += da;
      }
      prev_angle = a;
      have_prev = true;
    }
    if (degenerate) { rep.notes.push_back("gradient vanished at the initial position"); break; }

    // (b) both saturated-turn discs stay inside the zone over the window
    double slack = kInf;
    for (const Circle& disc : discs) {
      for (int i = 0; i < nt; ++i) {
        const double t = horizon * i / (nt - 1);
        for (int ir = 0; ir <= 12; ++ir) {
          const double rr = disc.radius * ir / 12.0;
          const int na = ir == 0 ? 1 : 24;
          for (int ia = 0; ia < na; ++ia) {
            const Vec2 p = disc.center + rr * unit_from_angle(2.0 * kPi * ia / na);
            const double d = field.value(t, p);
            slack = std::min(slack, std::min(d - zone.level_min, zone.level_max - d));
          }
        }
      }
    }

    last_rotation = rotation;
    last_net = net;
    last_slack = slack;
    if (rotation <= 2.0 * kPi * (k - 1) + 1e-9 && slack >= -1e-12) {
      found_k = k;
      found_rotation = rotation;
      found_net = net;
      found_slack = slack;
      break;
    }
  }

  if (found_k > 0) {
    rep.add_upper("init.rotation", found_rotation, 2.0 * kPi * (found_k - 1) + 1e-9, false);
    rep.add_lower("init.containment", found_slack, -1e-12, false);
    rep.set_derived("k", found_k);
    rep.set_derived("T_k", 2.0 * kPi * found_k / robot.turn_rate_limit);
    rep.set_derived("gradient_rotation_total", found_rotation);
    rep.set_derived("gradient_rotation_net", found_net);
  } else {
    rep.add_upper("init.rotation", last_rotation, 2.0 * kPi * (k_max - 1) + 1e-9, false);
    rep.add_lower("init.containment", last_slack, -1e-12, false);
    rep.satisfied = false;
    rep.set_derived("k", 0);
    rep.set_derived("gradient_rotation_total", last_rotation);
    rep.set_derived("gradient_rotation_net", last_net);
    rep.notes.push_back("no admissible k found up to the search cap");
  }
  rep.notes.push_back(
      "gradient rotation measured as total variation of the unwrapped angle; "
      "the net angle is reported alongside");
  return rep;
}

namespace {

// Continuous extension of the necessary-condition integrand at one normal
// center-velocity component.
double necessary_lhs(double v, double v0, double a0, double radius, double vn) {
  const double root_v = std::sqrt(std::max(v * v - vn * vn, 0.0));
  const double root_v0 = std::sqrt(std::max(v0 * v0 - vn * vn, 0.0));
  if (root_v == 0.0) return (a0 > 0.0 || root_v0 > 0.0) ? kInf : 0.0;
  return a0 / root_v + sqr(root_v + root_v0) / (radius * root_v);
}

}  // namespace

FeasibilityReport necessary_radial(double speed, double center_speed_max,
                                   double center_accel_max, double turn_limit,
                                   double radius_min) {
  FeasibilityReport rep;
  rep.add_lower("nec.radial.speed", speed, center_speed_max, false);
  rep.add_lower("nec.radial.radius", radius_min, 0.0, true);
  if (!(radius_min > 0.0)) return rep;

  constexpr int kGrid = 1000;
  double sup = -kInf, arg = 0.0, sensitivity = 0.0, prev = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double vn = center_speed_max * i / kGrid;
    const double lhs = necessary_lhs(speed, center_speed_max, center_accel_max,
                                     radius_min, vn);
    if (lhs > sup) { sup = lhs; arg = vn; }
    if (i > 0) sensitivity = std::max(sensitivity, std::abs(lhs - prev));
    prev = lhs;
  }
  rep.add_upper("nec.radial", sup, turn_limit, false);
  rep.set_derived("nec.radial.arg_vn", arg);
  rep.set_derived("nec.radial.grid_sensitivity", sensitivity);
  if (std::abs(turn_limit - sup) <= sensitivity)
    rep.notes.push_back("nec.radial margin is below the 1000-point grid sensitivity: marginal");
  return rep;
}

double necessary_radial_simplified(double speed, double center_speed_max,
                                   double center_accel_max, double radius_min) {
  const double root = std::sqrt(sqr(speed) - sqr(center_speed_max));
  const double first = center_accel_max > 0.0 ? center_accel_max / root : 0.0;
  return first + sqr(speed + center_speed_max) / (speed * radius_min);
}

FeasibilityReport radial_limit_check(const RadialLimitInputs& in) {
  FeasibilityReport rep;
  const double v = in.speed;
  const double v0 = in.center_speed_max;
  rep.add_lower("radial.limt.speed", v, v0, true);
  rep.add_lower("far.init", in.far_init_value, in.far_init_bound, true);
  rep.add_lower("radial.zone", in.radius_min, 0.0, true);
  rep.add_lower("radial.limt.du", in.turn_rate_margin, 0.0, true);

  const double mu = in.mu_star;
  const double cap = std::sqrt(v * v + (v - v0) * (v - v0)) - v;
  const double radicand = (v - v0) * (v - v0) - 2.0 * v * mu - mu * mu;
  const double sigma = std::sqrt(radicand);
  const double b_kappa = 1.0 / in.radius_min;
  const double b_alpha = in.center_accel_max + v0 * v0 / in.radius_min;
  const double lhs = ((b_kappa + in.gain + in.max_growth_normal * mu) / sigma +
                      b_alpha / (sigma * sigma * sigma)) * mu;

  rep.add_lower("radial.limt.mu_positive", mu, 0.0, true);
  rep.add_upper("radial.limt.mu_upper", mu, cap, true);
  rep.add_lower("radial.limt.sigma_radicand", radicand, 0.0, true);
  rep.add_upper("radial.limt.turn", lhs, in.turn_rate_margin, true);

  rep.set_derived("mu_star", mu);
  rep.set_derived("sigma", sigma);
  rep.set_derived("R_minus", in.radius_min);
  rep.set_derived("R_plus", in.radius_plus);
  rep.set_derived("R_prime_minus", in.radius_prime_min);
  rep.set_derived("R_prime_plus", in.radius_prime_plus);
  rep.set_derived("b_n", in.max_growth_normal);
  rep.set_derived("delta_u", in.turn_rate_margin);
  return rep;
}

namespace {

RadialLimitInputs make_radial_inputs(const RadialBounds& rb, const RobotParams& robot,
                                     const ControllerParams& ctrl,
                                     const RadialProfileData& profile) {
  const double transit =
      (2.0 * robot.speed + 4.0 * kPi * rb.center_speed_max) / robot.turn_rate_limit;
  const double r_prime_minus = rb.r_in_min - transit;
  const double r_prime_plus = rb.r_in_max + transit;
  const double radius_min = std::min(profile.level_radius_min, r_prime_minus);
  const double radius_plus = std::max(profile.level_radius_max, r_prime_plus);

  RadialLimitInputs in;
  in.speed = robot.speed;
  in.turn_limit = robot.turn_rate_limit;
  in.gain = ctrl.gain;
  in.mu_star = ctrl.gain * ctrl.band / (rb.c_min * profile.min_abs_slope);
  in.center_speed_max = rb.center_speed_max;
  in.center_accel_max = rb.center_accel_max;
  in.radius_min = radius_min;
  in.radius_plus = radius_plus;
  in.radius_prime_min = r_prime_minus;
  in.radius_prime_plus = r_prime_plus;
  in.max_growth_normal = profile.max_growth_normal;
  in.far_init_value = rb.r_in_min;
  in.far_init_bound = transit;

  if (radius_min > 0.0) {
    // available turn-rate margin: the limit minus the worst-case riding rate
    constexpr int kGrid = 1000;
    double sup = -kInf;
    for (int i = 0; i <= kGrid; ++i) {
      const double vn = rb.center_speed_max * i / kGrid;
      sup = std::max(sup, necessary_lhs(robot.speed, rb.center_speed_max,
                                        rb.center_accel_max, radius_min, vn));
    }
    in.turn_rate_margin = robot.turn_rate_limit - sup;
  } else {
    in.turn_rate_margin = -kInf;
  }
  return in;
}

}  // namespace

FeasibilityReport sufficient_radial(const RadialBounds& rb, const RobotParams& robot,
                                    const ControllerParams& ctrl,
                                    const RadialProfileData& profile, double d0) {
  FeasibilityReport rep = radial_limit_check(make_radial_inputs(rb, robot, ctrl, profile));
  rep.set_derived("d0", d0);
  return rep;
}

FeasibilityReport sufficient_radial(const RadialBounds& rb, const RobotParams& robot,
                                    const ControllerParams& ctrl,
                                    const RadialProfile& profile, double d0) {
  const double r_lo = profile.invert(d0 / rb.c_min);
  const double r_hi = profile.invert(d0 / rb.c_max);
  RadialProfileData data;
  data.level_radius_min = std::min(r_lo, r_hi);
  data.level_radius_max = std::max(r_lo, r_hi);

  // the final radius interval this data must cover
  const double transit =
      (2.0 * robot.speed + 4.0 * kPi * rb.center_speed_max) / robot.turn_rate_limit;
  const double radius_min = std::min(data.level_radius_min, rb.r_in_min - transit);
  const double radius_max = std::max(data.level_radius_max, rb.r_in_max + transit);
  if (radius_min > 0.0) {
    constexpr int kScan = 1000;
    double min_slope = kInf, max_ratio = 0.0;
    for (int i = 0; i <= kScan; ++i) {
      const double r = radius_min + (radius_max - radius_min) * i / kScan;
      const double slope = std::abs(profile.df(r));
      min_slope = std::min(min_slope, slope);
      if (slope > 0.0)
        max_ratio = std::max(max_ratio, std::abs(profile.ddf(r)) / slope);
      else
        max_ratio = kInf;
    }
    data.min_abs_slope = min_slope;
    data.max_growth_normal = max_ratio;
  } else {
    data.min_abs_slope = std::numeric_limits<double>::quiet_NaN();
    data.max_growth_normal = std::numeric_limits<double>::quiet_NaN();
  }
  FeasibilityReport rep = sufficient_radial(rb, robot, ctrl, data, d0);
  rep.notes.push_back("profile derivative bounds from a 1000-point scan of the radius interval");
  return rep;
}

AdvectionDerived advection_parameters(const AdvectionBounds& ab, const RobotParams& robot,
                                      double d0, double mu) {
  if (!(d0 > 0.0) || !(ab.c_min > d0))
    throw NonsensicalLevelError("the tracked level must satisfy 0 < level < c_min");
  if (!(ab.sigma_min > 0.0) || !(ab.sigma_max >= ab.sigma_min))
    throw Error("advection sigma bounds are inconsistent");

  AdvectionDerived out;
  out.level_radius = ab.sigma_min * std::sqrt(2.0 * (std::log(ab.c_min) - std::log(d0)));
  out.transit = (2.0 * robot.speed + 4.0 * kPi * ab.flow_max) / robot.turn_rate_limit;
  out.r_prime_minus = ab.r_in_min - out.transit;
  out.r_prime_plus = ab.r_in_max + out.transit;
  out.radius_min = std::min(out.level_radius, out.r_prime_minus);
  out.radius_plus = std::max(out.level_radius, ab.r_in_min + out.transit);

  if (out.radius_min > 0.0) {
    const auto slope_floor = [&](double r) {
      return r * std::exp(-r * r / (2.0 * ab.sigma_min * ab.sigma_min)) /
             (ab.sigma_max * ab.sigma_max);
    };
    out.min_abs_slope = std::min(slope_floor(out.radius_min), slope_floor(out.radius_plus));
    out.mu_star = mu / (ab.c_min * out.min_abs_slope);

    double bn = 0.0;
    for (double r : {out.radius_min, out.radius_plus})
      for (double s : {ab.sigma_min, ab.sigma_max})
        bn = std::max(bn, std::abs(s * s - r * r) / (s * s * r));
    out.max_growth_normal = bn;
    out.turn_rate_margin =
        robot.turn_rate_limit -
        sqr(robot.speed + ab.flow_max) / (robot.speed * out.radius_min);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.min_abs_slope = nan;
    out.mu_star = nan;
    out.max_growth_normal = nan;
    out.turn_rate_margin = -kInf;
  }
  return out;
}

FeasibilityReport check_advection(const AdvectionBounds& ab, const RobotParams& robot,
                                  const ControllerParams& ctrl, double d0) {
  const AdvectionDerived d = advection_parameters(ab, robot, d0, ctrl.rate_cap());
  RadialLimitInputs in;
  in.speed = robot.speed;
  in.turn_limit = robot.turn_rate_limit;
  in.gain = ctrl.gain;
  in.mu_star = d.mu_star;
  in.center_speed_max = ab.flow_max;
  in.center_accel_max = 0.0;
  in.radius_min = d.radius_min;
  in.radius_plus = d.radius_plus;
  in.radius_prime_min = d.r_prime_minus;
  in.radius_prime_plus = d.r_prime_plus;
  in.max_growth_normal = d.max_growth_normal;
  in.turn_rate_margin = d.turn_rate_margin;
  in.far_init_value = ab.r_in_min;
  in.far_init_bound = d.transit;
  FeasibilityReport rep = radial_limit_check(in);
  rep.set_derived("level_radius", d.level_radius);
  rep.set_derived("min_abs_slope", d.min_abs_slope);
  rep.notes.push_back("advected-gaussian specialization: zero center acceleration, "
                      "flow bound as center speed");
  return rep;
}

}  // namespace isotrack
