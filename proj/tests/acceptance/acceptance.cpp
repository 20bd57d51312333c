// Acceptance suite: exercises the oracle-equivalence, scaling, closed-form,
// closed-loop and verifier-coherence contracts end to end. Prints one
// PASS/FAIL line per criterion; the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "isotrack/field.hpp"
#include "isotrack/isoline.hpp"
#include "isotrack/oracles.hpp"
#include "isotrack/rng.hpp"
#include "isotrack/scenario.hpp"
#include "isotrack/sim.hpp"
#include "isotrack/vehicle.hpp"
#include "isotrack/verify.hpp"

using namespace isotrack;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Failure {
  std::string detail;
  bool failed = false;

  void expect(bool ok, const std::string& what) {
    if (!ok && !failed) {
      failed = true;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool within(double got, double want, double rtol, double atol) {
  return std::abs(got - want) <= atol + rtol * std::abs(want);
}

ControllerParams ctrl_with(double gain, double band, double level = 0.0) {
  ControllerParams p;
  p.target_level = level;
  p.gain = gain;
  p.band = band;
  return p;
}

// the four-field suite used by criteria 1 and 2
struct SuiteField {
  const char* name;
  FieldPtr field;
  Vec2 drift;        // feature translation per unit time (sampling aid)
  double radius_lo;  // in-zone sampling annulus around the feature
  double radius_hi;
};

std::vector<SuiteField> field_suite() {
  return {
      {"static gaussian",
       make_radial_field({std::make_shared<GaussianProfile>(1.0), 2.0,
                          std::make_shared<StaticPoint>(Vec2{0.3, -0.2})}),
       {0, 0}, 0.7, 1.9},
      {"orbiting gaussian",
       make_radial_field({std::make_shared<GaussianProfile>(1.2), 1.5,
                          std::make_shared<CircleOrbit>(Vec2{0, 0}, 0.5, 0.4)}),
       {0, 0}, 0.8, 2.0},
      {"advected gaussian", make_advected_field({{0, 0}, 1.0, 2.0, {0.25, -0.15}}),
       {0.25, -0.15}, 0.7, 1.9},
      {"moving distance",
       make_radial_field({std::make_shared<LinearDecayProfile>(), 1.0,
                          std::make_shared<LinePath>(Vec2{0, 0}, Vec2{0.2, 0.1})}),
       {0.2, 0.1}, 1.0, 5.0},
  };
}

Vec2 suite_center(const SuiteField& sf, double t) {
  if (std::string(sf.name) == "static gaussian") return {0.3, -0.2};
  if (std::string(sf.name) == "orbiting gaussian")
    return Vec2{0.5 * std::cos(0.4 * t), 0.5 * std::sin(0.4 * t)};
  return t * sf.drift;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  Failure f;
  Rng rng(1001);
  for (const SuiteField& sf : field_suite()) {
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform(0.0, 3.0);
      const Vec2 r = suite_center(sf, t) +
                     rng.uniform(sf.radius_lo, sf.radius_hi) *
                         unit_from_angle(rng.uniform(0.0, 2.0 * kPi));
      const IsolineQuantities formula = quantities(sf.field->jet(t, r));
      const IsolineQuantities oracle = oracle_quantities(*sf.field, t, r);
      const std::pair<double, double> pairs[8] = {
          {oracle.front_speed, formula.front_speed},
          {oracle.density, formula.density},
          {oracle.curvature, formula.curvature},
          {oracle.rotation_rate, formula.rotation_rate},
          {oracle.front_accel, formula.front_accel},
          {oracle.growth_evolution, formula.growth_evolution},
          {oracle.growth_tangent, formula.growth_tangent},
          {oracle.growth_normal, formula.growth_normal},
      };
      for (int k = 0; k < 8; ++k)
        f.expect(within(pairs[k].first, pairs[k].second, 1e-4, 1e-6),
                 std::string(sf.name) + " quantity " + std::to_string(k) + ": oracle " +
                     num(pairs[k].first) + " vs formula " + num(pairs[k].second));
    }
  }
  const double elapsed = seconds_since(start);
  f.expect(elapsed < 60.0, "runtime " + num(elapsed) + " s exceeds 60 s");
  detail = f.failed ? f.detail : "4 fields x 100 points x 8 quantities, " + num(elapsed) + " s";
  return !f.failed;
}

bool criterion2(std::string& detail) {
  Failure f;
  Rng rng(2002);
  int ratios_checked = 0;
  for (const SuiteField& sf : field_suite()) {
    double sum_full[8] = {}, sum_half[8] = {};
    for (int i = 0; i < 20; ++i) {
      const double t = rng.uniform(0.0, 3.0);
      const Vec2 r = suite_center(sf, t) +
                     rng.uniform(sf.radius_lo, sf.radius_hi) *
                         unit_from_angle(rng.uniform(0.0, 2.0 * kPi));
      const ExpansionResiduals full = expansion_residuals(*sf.field, t, r, 1e-3, 1e-3);
      const ExpansionResiduals half = expansion_residuals(*sf.field, t, r, 5e-4, 5e-4);
      const double fv[8] = {full.front_speed_tangent, full.front_speed_normal,
                            full.frame_tangent_n, full.frame_tangent_t,
                            full.frame_normal_n, full.frame_normal_t,
                            full.frame_time_n, full.frame_time_t};
      const double hv[8] = {half.front_speed_tangent, half.front_speed_normal,
                            half.frame_tangent_n, half.frame_tangent_t,
                            half.frame_normal_n, half.frame_normal_t,
                            half.frame_time_n, half.frame_time_t};
      for (int k = 0; k < 8; ++k) {
        sum_full[k] += fv[k];
        sum_half[k] += hv[k];
      }
    }
    for (int k = 0; k < 8; ++k) {
      if (sum_full[k] < 1e-11 && sum_half[k] < 1e-11) continue;  // identically zero case
      const double ratio = sum_full[k] / sum_half[k];
      ++ratios_checked;
      f.expect(ratio > 3.5 && ratio < 4.5,
               std::string(sf.name) + " residual " + std::to_string(k) + " ratio " +
                   num(ratio));
    }
  }
  f.expect(ratios_checked >= 16, "too few nonzero residuals exercised");
  detail = f.failed ? f.detail
                    : "halving the step scales " + std::to_string(ratios_checked) +
                          " residual aggregates by ~4";
  return !f.failed;
}

bool criterion3(std::string& detail) {
  Failure f;
  Rng rng(3003);
  for (int i = 0; i < 1000; ++i) {
    const bool gaussian = rng.next_double() < 0.7;
    const double c = rng.uniform(0.5, 3.0);
    ProfilePtr prof;
    if (gaussian) prof = std::make_shared<GaussianProfile>(rng.uniform(0.6, 2.0));
    else prof = std::make_shared<LinearDecayProfile>();
    const auto path = std::make_shared<CircleOrbit>(
        Vec2{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.1, 1.0),
        rng.uniform(-1.0, 1.0), rng.uniform(0.0, 2.0 * kPi));
    const FieldPtr field = make_radial_field({prof, c, path});

    const double t = rng.uniform(0.0, 5.0);
    const PathPoint center = path->at(t);
    const double radius = rng.uniform(0.3, 2.5);
    const Vec2 r = center.pos + radius * unit_from_angle(rng.uniform(0.0, 2.0 * kPi));
    const IsolineQuantities q = quantities(field->jet(t, r));

    const Vec2 e = (r - center.pos) / radius;
    const Vec2 normal = -1.0 * e;
    const Vec2 tangent{normal.y, -normal.x};
    const double vt = dot(center.vel, tangent);
    const std::pair<double, double> pairs[8] = {
        {q.front_speed, dot(center.vel, normal)},
        {q.density, c * std::abs(prof->df(radius))},
        {q.curvature, 1.0 / radius},
        {q.rotation_rate, -vt / radius},
        {q.front_accel, dot(center.acc, normal) + vt * vt / radius},
        {q.growth_evolution, 0.0},
        {q.growth_tangent, 0.0},
        {q.growth_normal, prof->ddf(radius) / std::abs(prof->df(radius))},
    };
    for (int k = 0; k < 8; ++k)
      f.expect(within(pairs[k].first, pairs[k].second, 1e-8, 1e-10),
               "config " + std::to_string(i) + " quantity " + std::to_string(k) + ": " +
                   num(pairs[k].first) + " vs " + num(pairs[k].second));
  }
  detail = f.failed ? f.detail : "1000 random radial configurations, all eight closed forms";
  return !f.failed;
}

// shared with criterion 4: the static-gaussian scenario of the example config
Scenario gaussian_scenario(const RobotState& initial) {
  RadialSpec spec{std::make_shared<GaussianProfile>(1.0), 2.0,
                  std::make_shared<StaticPoint>(Vec2{0, 0})};
  RadialBounds rb;
  rb.r_in_min = 1.30;
  rb.r_in_max = 1.60;
  rb.c_min = rb.c_max = 2.0;
  return build_radial(spec, rb, 1.0, {1.0, 4.0}, ctrl_with(0.5, 0.1), initial);
}

bool criterion4(std::string& detail) {
  Failure f;

  // tuning must clear the global inequalities with analytically derived bounds
  const double r_lo = 0.80, r_hi = 2.10;  // working radius interval
  const auto slope = [](double r) { return r * std::exp(-r * r / 2.0); };
  FieldBounds bounds;
  bounds.max_inv_density = 1.0 / (2.0 * std::min(slope(r_lo), slope(r_hi)));
  bounds.front_speed_margin = 1.0;
  bounds.turn_rate_margin = 4.0 - 1.0 / r_lo;
  bounds.max_curvature = 1.0 / r_lo;
  bounds.max_growth_normal =
      std::max(std::abs(1.0 - r_lo * r_lo) / r_lo, std::abs(1.0 - r_hi * r_hi) / r_hi);
  const FeasibilityReport tuning =
      check_tuning_inequalities(bounds, {1.0, 4.0}, ctrl_with(0.5, 0.1));
  f.expect(tuning.satisfied, "tuning inequalities rejected the chosen parameters");

  Rng rng(4004);
  double slowest = 0.0;
  for (int seed = 0; seed < 10 && !f.failed; ++seed) {
    const double radius = rng.uniform(1.36, 1.55);
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const Vec2 pos = radius * unit_from_angle(angle);
    const RobotState initial{pos.x, pos.y, rng.uniform(0.0, 2.0 * kPi)};
    const Scenario scenario = gaussian_scenario(initial);

    const auto start = std::chrono::steady_clock::now();
    SimOptions opt;
    opt.horizon = 40.0;
    opt.dt = 1e-3;
    const SimResult result = simulate(scenario, opt);
    const double elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);

    f.expect(!result.summary.aborted, "run aborted: " + result.summary.abort_reason);
    f.expect(result.summary.entered_band,
             "seed " + std::to_string(seed) + " never reached the band");
    f.expect(result.summary.in_band_fraction >= 0.99,
             "seed " + std::to_string(seed) + " in-band fraction " +
                 num(result.summary.in_band_fraction));
    f.expect(result.summary.stayed_in_zone,
             "seed " + std::to_string(seed) + " left the operational zone");
    f.expect(elapsed < 10.0, "run took " + num(elapsed) + " s");
  }
  detail = f.failed ? f.detail : "10 seeded poses converge and hold; slowest run " +
                                     num(slowest) + " s";
  return !f.failed;
}

bool criterion5(std::string& detail) {
  Failure f;
  const double v = 1.0, u_bar = 2.0, range = 5.0, v0 = 0.5;
  const TargetPath target =
      target_path(std::make_shared<LinePath>(Vec2{8.2, 0.0}, Vec2{v0, 0.0}));
  const Scenario scenario =
      build_escort(target, range, {v, u_bar}, ctrl_with(0.3, 0.3), {0.0, 0.0, 0.8},
                   std::make_pair(8.0, 8.5));

  FeasibilityReport sufficient;
  for (const NamedCheck& c : scenario.checks)
    if (c.name == "radial.limt") sufficient = c.run();
  f.expect(sufficient.satisfied, "radial sufficiency rejected the parameters");
  f.expect(sufficient.derived_value("mu_star") == 0.3 * 0.3,
           "escort substitution must give mu* = gain*band exactly");
  f.expect(sufficient.derived_value("b_n") == 0.0, "escort substitution must give b_n = 0");

  SimOptions opt;
  opt.horizon = 200.0 / u_bar;
  opt.dt = 1e-3;
  const SimResult result = simulate(scenario, opt);
  f.expect(!result.summary.aborted, "run aborted: " + result.summary.abort_reason);

  const double band = scenario.ctrl.band + result.summary.chatter_quantum;
  std::size_t held = 0, window = 0;
  for (const TrajectoryRow& row : result.rows) {
    if (row.t < opt.horizon / 2.0) continue;
    ++window;
    const Vec2 tp = target.path->at(row.t).pos;
    const double rr = (Vec2{row.x, row.y} - tp).norm();
    if (std::abs(rr - range) <= band) ++held;
  }
  f.expect(window > 0 && held == window,
           "range left the band during the final half: " + std::to_string(held) + "/" +
               std::to_string(window));
  detail = f.failed ? f.detail
                    : "range held at " + num(range) + " +/- " + num(band) +
                          " m for the final half of " + num(opt.horizon) + " s";
  return !f.failed;
}

bool criterion6(std::string& detail) {
  Failure f;
  const double v = 1.0, u_bar = 8.0, d0 = 1.0;
  const Vec2 flow{v / 3.0, 0.0};
  AdvectionSpec spec{{0.0, 0.0}, 1.0, 2.0, flow};
  AdvectionBounds ab;
  ab.sigma_min = 0.9;
  ab.sigma_max = 1.1;
  ab.c_min = 1.8;
  ab.flow_max = flow.norm();
  ab.r_in_min = 1.25;
  ab.r_in_max = 1.35;
  const ControllerParams ctrl = ctrl_with(0.4, 0.075, d0);
  const Scenario scenario = build_advection(spec, ab, d0, {v, u_bar}, ctrl, {1.3, 0.0, 0.5});

  const FeasibilityReport rep = check_advection(ab, {v, u_bar}, ctrl, d0);
  f.expect(rep.satisfied, "advected-gaussian sufficiency rejected the parameters");

  SimOptions opt;
  opt.horizon = 200.0 / u_bar;
  opt.dt = 1e-3;
  const SimResult result = simulate(scenario, opt);
  f.expect(!result.summary.aborted, "run aborted: " + result.summary.abort_reason);

  // convert the tracked-level band into radii of the drifting circle
  const double band = scenario.ctrl.band + result.summary.chatter_quantum;
  const double r_inner = std::sqrt(2.0 * std::log(spec.intensity / (d0 + band)));
  const double r_outer = std::sqrt(2.0 * std::log(spec.intensity / (d0 - band)));
  std::size_t held = 0, window = 0;
  for (const TrajectoryRow& row : result.rows) {
    if (row.t < opt.horizon / 2.0) continue;
    ++window;
    const Vec2 center = spec.center0 + row.t * flow;
    const double rr = (Vec2{row.x, row.y} - center).norm();
    if (rr >= r_inner && rr <= r_outer) ++held;
  }
  f.expect(window > 0 && held == window,
           "radius left the moving ring during the final half: " + std::to_string(held) +
               "/" + std::to_string(window));
  detail = f.failed ? f.detail
                    : "drifting isoline radius held within [" + num(r_inner) + ", " +
                          num(r_outer) + "] for the final half of " + num(opt.horizon) + " s";
  return !f.failed;
}

bool criterion7(std::string& detail) {
  Failure f;
  Rng rng(7007);

  // (a) the simplified bound implies the full necessary condition
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(0.3, 3.0);
    const double v0 = rng.uniform(0.0, 0.9) * v;
    const double a0 = rng.uniform(0.0, 3.0);
    const double radius = rng.uniform(0.3, 30.0);
    const double simplified = necessary_radial_simplified(v, v0, a0, radius);
    const double turn_limit = simplified * (1.0 + rng.uniform(0.0, 2.0));
    f.expect(necessary_radial(v, v0, a0, turn_limit, radius).satisfied,
             "draw " + std::to_string(i) + ": simplified bound held but the full check failed");
  }

  // (b) the semi-strip cap lies inside the exact feasible set
  for (int i = 0; i < 1000; ++i) {
    FieldBounds b;
    b.max_inv_density = rng.uniform(0.5, 3.0);
    b.front_speed_margin = rng.uniform(0.1, 0.8);
    b.turn_rate_margin = rng.uniform(0.02, 1.5);
    b.max_growth_tangent = rng.uniform(0.0, 0.5);
    b.max_growth_normal = rng.uniform(0.0, 1.5);
    b.max_curvature = rng.uniform(0.0, 1.0);
    b.max_growth_evolution = rng.uniform(0.0, 0.5);
    b.max_front_accel = rng.uniform(0.0, 0.3);
    const double v = rng.uniform(0.5, 2.0);
    const double zeta = rng.uniform(0.05, 0.95);
    const double gain = rng.uniform(0.05, 1.0);
    const double cap = semistrip_bound(zeta, b, {v, 1.0}, gain);
    f.expect(cap > 0.0, "draw " + std::to_string(i) + ": positive margin gave no cap");
    if (cap <= 0.0) continue;
    const ControllerParams ctrl = ctrl_with(gain, cap / b.max_inv_density / gain);
    f.expect(check_tuning_inequalities(b, {v, 1.0}, ctrl).satisfied,
             "draw " + std::to_string(i) + ": semi-strip cap " + num(cap) +
                 " fell outside the exact feasible set");
  }

  // (c) the range-keeping substitutions reproduce the closed forms exactly
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(0.8, 2.0);
    const double v0 = rng.uniform(0.1, 0.6) * v;
    const double u_bar = rng.uniform(1.0, 4.0);
    const double range = rng.uniform(2.0, 8.0);
    const double gain = rng.uniform(0.1, 0.8);
    const double band = rng.uniform(0.05, 0.5);
    const double a0 = rng.uniform(0.0, 0.2);
    RadialBounds rb;
    rb.r_in_min = rng.uniform(8.0, 12.0);
    rb.r_in_max = rb.r_in_min + rng.uniform(0.0, 2.0);
    rb.center_speed_max = v0;
    rb.center_accel_max = a0;
    rb.c_min = rb.c_max = 1.0;
    const FeasibilityReport rep = sufficient_radial(
        rb, {v, u_bar}, ctrl_with(gain, band), RadialProfileData{range, range, 1.0, 0.0},
        -range);

    const double transit = (2.0 * v + 4.0 * kPi * v0) / u_bar;
    const double r_minus = std::min(range, rb.r_in_min - transit);
    const double mu = gain * band;
    const double cap = std::sqrt(v * v + (v - v0) * (v - v0)) - v;
    f.expect(rep.derived_value("mu_star") == mu, "mu* differs from gain*band");
    f.expect(rep.derived_value("R_minus") == r_minus, "radius bound differs");
    f.expect(rep.find("radial.limt.mu_upper")->bound == cap, "mu* cap differs");
    const double radicand = (v - v0) * (v - v0) - 2.0 * v * mu - mu * mu;
    if (radicand > 0.0 && r_minus > 0.0) {
      const double sigma = std::sqrt(radicand);
      const double lhs = ((1.0 / r_minus + gain + 0.0 * mu) / sigma +
                          (a0 + v0 * v0 / r_minus) / (sigma * sigma * sigma)) * mu;
      f.expect(rep.find("radial.limt.turn")->value == lhs,
               "turn inequality differs from the hand substitution");
    }
  }
  detail = f.failed ? f.detail : "3000 randomized coherence draws, zero counterexamples";
  return !f.failed;
}

bool criterion8(std::string& detail) {
  Failure f;
  const double v = 1.0, u_bar = 2.0, range = 5.0;
  const double v0 = 1.25;  // target 25% faster than the vehicle
  const TargetPath target =
      target_path(std::make_shared<LinePath>(Vec2{10.0, 0.0}, Vec2{v0, 0.0}));
  const Scenario scenario =
      build_escort(target, range, {v, u_bar}, ctrl_with(0.3, 0.3), {0.0, 0.0, 0.0},
                   std::make_pair(10.0, 10.0));

  FeasibilityReport nec;
  for (const NamedCheck& c : scenario.checks)
    if (c.name == "nec.radial") nec = c.run();
  f.expect(!nec.satisfied, "the necessary condition accepted an impossible pursuit");
  const Margin* speed = nec.find("nec.radial.speed");
  f.expect(speed && speed->slack <= -0.25 * v, "the speed violation is not >= 25%");

  SimOptions opt;
  opt.horizon = 100.0;
  opt.dt = 1e-3;
  const SimResult result = simulate(scenario, opt);
  f.expect(!result.summary.aborted, "run aborted: " + result.summary.abort_reason);
  f.expect(!result.summary.entered_band, "the range error entered the band anyway");

  double closest = 1e300;
  for (const TrajectoryRow& row : result.rows)
    closest = std::min(closest, std::abs(-row.d - range));
  f.expect(closest > scenario.ctrl.band + result.summary.chatter_quantum,
           "range error came within the band: " + num(closest));
  detail = f.failed ? f.detail
                    : "infeasible pursuit flagged and never converged (closest range error " +
                          num(closest) + " m)";
  return !f.failed;
}

bool criterion9(std::string& detail) {
  Failure f;
  Rng rng(9009);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double speed = rng.uniform(0.2, 2.0);
    const RobotParams params{speed, 2.0};
    const RobotState s{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-7, 7)};
    const double u = rng.uniform(-2.0, 2.0);
    const double dt = 1e-2;
    const RobotState got = step(s, u, params, dt);

    RobotState want = s;
    want.theta = s.theta + u * dt;
    if (u == 0.0) {
      want.x += speed * dt * std::cos(s.theta);
      want.y += speed * dt * std::sin(s.theta);
    } else {
      want.x += (speed / u) * (std::sin(want.theta) - std::sin(s.theta));
      want.y -= (speed / u) * (std::cos(want.theta) - std::cos(s.theta));
    }
    worst = std::max({worst, std::abs(got.x - want.x), std::abs(got.y - want.y),
                      std::abs(got.theta - want.theta)});
  }
  f.expect(worst < 1e-9, "worst deviation from the arc solution: " + num(worst));
  detail = f.failed ? f.detail : "10000 random steps, worst arc deviation " + num(worst);
  return !f.failed;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence of the isoline quantities", criterion1},
      {2, "first-order expansion residuals scale quadratically", criterion2},
      {3, "radial closed forms at 1000 random configurations", criterion3},
      {4, "static gaussian acquisition from 10 seeded poses", criterion4},
      {5, "escort of a constant-velocity target at half speed", criterion5},
      {6, "advected gaussian plume tracking at a third of the speed", criterion6},
      {7, "verifier coherence over randomized parameter draws", criterion7},
      {8, "necessary-condition contrapositive: fast targets escape", criterion8},
      {9, "integrator matches the constant-turn arc solution", criterion9},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
