#include "isotrack/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace isotrack {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_path_honesty(const PathC2& path, double speed_max, double accel_max,
                        double horizon, const char* what) {
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const PathPoint p = path.at(horizon * i / n);
    if (p.vel.norm() > speed_max * (1.0 + 1e-9))
      throw BuildError(std::string(what) + ": sampled speed exceeds the declared bound");
    if (p.acc.norm() > accel_max * (1.0 + 1e-9) + 1e-15)
      throw BuildError(std::string(what) + ": sampled acceleration exceeds the declared bound");
  }
}

void check_start_band(const Scenario& s) {
  const double d0 = s.field->value(0.0, s.initial.position());
  if (!(d0 >= s.start_band.first && d0 <= s.start_band.second))
    throw BuildError("initial field value lies outside the declared start band");
  if (!s.zone.contains(s.ctrl.target_level))
    throw BuildError("operational zone does not contain the tracked level");
}

}  // namespace

TargetPath target_path(PathPtr path, double validation_horizon) {
  TargetPath t;
  t.path = std::move(path);
  t.speed_max = t.path->max_speed();
  t.accel_max = t.path->max_accel();
  t.validation_horizon = validation_horizon;
  return t;
}

std::optional<Circle> Scenario::isoline_circle(double level, double t) const {
  if (!center || !profile) return std::nullopt;
  try {
    return Circle{center->at(t).pos, profile->invert(level / intensity)};
  } catch (const LevelOutOfRangeError&) {
    return std::nullopt;
  }
}

FeasibilityReport Scenario::verify_all() const {
  FeasibilityReport all;
  for (const NamedCheck& c : checks) all.absorb(c.run(), c.name + ".");
  return all;
}

Scenario build_escort(const TargetPath& target, double range, const RobotParams& robot,
                      const ControllerParams& ctrl, const RobotState& initial,
                      std::optional<std::pair<double, double>> declared_initial_range) {
  if (!(range > 0.0)) throw BuildError("escort range must be positive");
  check_path_honesty(*target.path, target.speed_max, target.accel_max,
                     target.validation_horizon, "target path");

  Scenario s;
  s.name = "escort";
  s.profile = std::make_shared<LinearDecayProfile>();
  s.intensity = 1.0;
  s.center = target.path;
  s.field = make_radial_field({s.profile, 1.0, target.path});
  s.robot = robot;
  ControllerParams c = ctrl;
  c.target_level = -range;
  s.ctrl = c;
  s.initial = initial;

  const double actual_range = (initial.position() - target.path->at(0.0).pos).norm();
  const auto [rin_lo, rin_hi] =
      declared_initial_range.value_or(std::make_pair(actual_range, actual_range));
  if (!(actual_range >= rin_lo * (1.0 - 1e-12) && actual_range <= rin_hi * (1.0 + 1e-12)))
    throw BuildError("initial range lies outside its declared bounds");

  const double transit =
      (2.0 * robot.speed + 4.0 * kPi * target.speed_max) / robot.turn_rate_limit;
  const double r_prime_minus = rin_lo - transit;
  const double r_prime_plus = rin_hi + transit;
  const double radius_min = std::min(range, r_prime_minus);
  const double radius_max = std::max(range, r_prime_plus);
  s.zone = {-radius_max, std::max(-radius_min, c.target_level)};
  s.start_band = {-rin_hi, -rin_lo};

  RadialBounds rb;
  rb.r_in_min = rin_lo;
  rb.r_in_max = rin_hi;
  rb.center_speed_max = target.speed_max;
  rb.center_accel_max = target.accel_max;
  rb.c_min = 1.0;
  rb.c_max = 1.0;
  RadialProfileData data{range, range, 1.0, 0.0};  // |f'| = 1, f'' = 0

  const RobotParams robot_copy = robot;
  const ControllerParams ctrl_copy = c;
  const double v0 = target.speed_max, a0 = target.accel_max;
  s.checks.push_back({"nec.radial", [=] {
                        return necessary_radial(robot_copy.speed, v0, a0,
                                                robot_copy.turn_rate_limit, radius_min);
                      }});
  s.checks.push_back({"radial.limt", [=] {
                        return sufficient_radial(rb, robot_copy, ctrl_copy, data,
                                                 ctrl_copy.target_level);
                      }});
  const FieldPtr field = s.field;
  const OperationalZone zone = s.zone;
  const RobotState init = initial;
  s.checks.push_back(
      {"init", [=] { return check_initial_phase(*field, init, robot_copy, zone); }});

  s.provenance["d0"] = "minus the commanded range";
  s.provenance["R_minus"] = "min of the commanded range and the shrunk initial range bound";
  s.provenance["mu_star"] = "gain*band: unit intensity and unit profile slope";
  s.provenance["b_n"] = "zero: the distance profile has no second derivative";
  check_start_band(s);
  return s;
}

Scenario build_radial(const RadialSpec& spec, const RadialBounds& bounds, double d0,
                      const RobotParams& robot, const ControllerParams& ctrl,
                      const RobotState& initial) {
  if (!spec.profile || !spec.center) throw BuildError("radial scenario needs profile and center");
  if (!(bounds.c_min > 0.0) || bounds.c_max < bounds.c_min)
    throw BuildError("radial intensity bounds are inconsistent");
  if (spec.intensity < bounds.c_min * (1.0 - 1e-12) ||
      spec.intensity > bounds.c_max * (1.0 + 1e-12))
    throw BuildError("actual intensity lies outside its declared bounds");
  check_path_honesty(*spec.center, bounds.center_speed_max, bounds.center_accel_max,
                     1000.0, "field center path");

  // well-posedness of the level under the intensity uncertainty
  const double r_level_a = spec.profile->invert(d0 / bounds.c_min);
  const double r_level_b = spec.profile->invert(d0 / bounds.c_max);

  Scenario s;
  s.name = "radial";
  s.profile = spec.profile;
  s.intensity = spec.intensity;
  s.center = spec.center;
  s.field = make_radial_field(spec);
  s.robot = robot;
  ControllerParams c = ctrl;
  c.target_level = d0;
  s.ctrl = c;
  s.initial = initial;

  const double actual_rin = (initial.position() - spec.center->at(0.0).pos).norm();
  if (!(actual_rin >= bounds.r_in_min * (1.0 - 1e-12) &&
        actual_rin <= bounds.r_in_max * (1.0 + 1e-12)))
    throw BuildError("initial center distance lies outside its declared bounds");

  const double transit =
      (2.0 * robot.speed + 4.0 * kPi * bounds.center_speed_max) / robot.turn_rate_limit;
  const double r_prime_minus = bounds.r_in_min - transit;
  const double r_prime_plus = bounds.r_in_max + transit;
  const double radius_min = std::min({r_level_a, r_level_b, r_prime_minus});

  const auto [dom_lo, dom_hi] = spec.profile->domain();
  const double inner = std::max(r_prime_minus, dom_lo + 1e-12 * (1.0 + std::abs(dom_lo)));
  const double outer = std::min(r_prime_plus, dom_hi);
  s.zone = {std::min(spec.intensity * spec.profile->f(outer), d0),
            std::max(spec.intensity * spec.profile->f(inner), d0)};
  s.start_band = {spec.intensity * spec.profile->f(std::min(bounds.r_in_max, dom_hi)),
                  spec.intensity * spec.profile->f(std::max(bounds.r_in_min, inner))};

  const RobotParams robot_copy = robot;
  const ControllerParams ctrl_copy = c;
  const RadialBounds rb = bounds;
  const ProfilePtr prof = spec.profile;
  s.checks.push_back({"nec.radial", [=] {
                        return necessary_radial(robot_copy.speed, rb.center_speed_max,
                                                rb.center_accel_max,
                                                robot_copy.turn_rate_limit, radius_min);
                      }});
  s.checks.push_back({"radial.limt", [=] {
                        return sufficient_radial(rb, robot_copy, ctrl_copy, *prof, d0);
                      }});
  const FieldPtr field = s.field;
  const OperationalZone zone = s.zone;
  const RobotState init = initial;
  s.checks.push_back(
      {"init", [=] { return check_initial_phase(*field, init, robot_copy, zone); }});

  s.provenance["R_minus"] = "min of the level radii over the intensity range and the "
                            "shrunk initial distance bound";
  s.provenance["profile bounds"] = "dense scan of |f'| and |f''|/|f'| over the radius interval";
  check_start_band(s);
  return s;
}

Scenario build_advection(const AdvectionSpec& spec, const AdvectionBounds& bounds,
                         double d0, const RobotParams& robot, const ControllerParams& ctrl,
                         const RobotState& initial) {
  if (!(d0 > 0.0) || !(bounds.c_min > d0))
    throw NonsensicalLevelError("the tracked level must satisfy 0 < level < c_min");
  if (spec.sigma < bounds.sigma_min * (1.0 - 1e-12) ||
      spec.sigma > bounds.sigma_max * (1.0 + 1e-12))
    throw BuildError("actual sigma lies outside its declared bounds");
  if (spec.intensity < bounds.c_min * (1.0 - 1e-12))
    throw BuildError("actual intensity lies below its declared lower bound");
  if (bounds.c_max && spec.intensity > *bounds.c_max * (1.0 + 1e-12))
    throw BuildError("actual intensity lies above its declared upper bound");
  if (spec.flow.norm() > bounds.flow_max * (1.0 + 1e-12))
    throw BuildError("actual flow exceeds its declared bound");

  Scenario s;
  s.name = "advection";
  s.profile = std::make_shared<GaussianProfile>(spec.sigma);
  s.intensity = spec.intensity;
  s.center = std::make_shared<LinePath>(spec.center0, spec.flow);
  s.field = make_advected_field(spec);
  s.robot = robot;
  ControllerParams c = ctrl;
  c.target_level = d0;
  s.ctrl = c;
  s.initial = initial;

  const double actual_rin = (initial.position() - spec.center0).norm();
  if (!(actual_rin >= bounds.r_in_min * (1.0 - 1e-12) &&
        actual_rin <= bounds.r_in_max * (1.0 + 1e-12)))
    throw BuildError("initial center distance lies outside its declared bounds");

  const double transit =
      (2.0 * robot.speed + 4.0 * kPi * bounds.flow_max) / robot.turn_rate_limit;
  const double r_prime_minus = bounds.r_in_min - transit;
  const double r_prime_plus = bounds.r_in_max + transit;
  const auto f_actual = [&](double r) {
    return spec.intensity * std::exp(-r * r / (2.0 * spec.sigma * spec.sigma));
  };
  s.zone = {std::min(f_actual(r_prime_plus), d0),
            std::max(f_actual(std::max(r_prime_minus, 0.0)), d0)};
  s.start_band = {f_actual(bounds.r_in_max), f_actual(bounds.r_in_min)};

  const RobotParams robot_copy = robot;
  const ControllerParams ctrl_copy = c;
  const AdvectionBounds ab = bounds;
  s.checks.push_back({"nec.radial", [=] {
                        const AdvectionDerived der =
                            advection_parameters(ab, robot_copy, d0, ctrl_copy.rate_cap());
                        return necessary_radial(robot_copy.speed, ab.flow_max, 0.0,
                                                robot_copy.turn_rate_limit, der.radius_min);
                      }});
  s.checks.push_back({"radial.limt", [=] {
                        return check_advection(ab, robot_copy, ctrl_copy, d0);
                      }});
  const FieldPtr field = s.field;
  const OperationalZone zone = s.zone;
  const RobotState init = initial;
  s.checks.push_back(
      {"init", [=] { return check_initial_phase(*field, init, robot_copy, zone); }});

  s.provenance["R_minus"] = "min of the guaranteed level radius and the shrunk initial "
                            "distance bound";
  s.provenance["mu_star"] = "rate cap over the worst-case density along the radius interval";
  s.provenance["b_n"] = "corner maximum of |sigma^2 - R^2|/(sigma^2 R)";
  check_start_band(s);
  return s;
}

}  // namespace isotrack
