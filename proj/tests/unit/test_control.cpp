#include <cmath>
#include <memory>

#include "doctest.h"
#include "isotrack/control.hpp"
#include "isotrack/field.hpp"
#include "isotrack/rng.hpp"

using namespace isotrack;

namespace {

// a field that depends on time only; handy for scripted sensor inputs
class TimeOnlyField final : public Field {
 public:
  explicit TimeOnlyField(double (*fn)(double)) : fn_(fn) {}
  FieldJet jet(double t, Vec2) const override {
    FieldJet j;
    j.value = fn_(t);
    return j;
  }
  double value(double t, Vec2) const override { return fn_(t); }

 private:
  double (*fn_)(double);
};

}  // namespace

TEST_CASE("saturated linear ramp") {
  ControllerParams p;
  p.gain = 2.0;
  p.band = 0.5;
  CHECK(sat_linear(0.0, p) == 0.0);
  CHECK(sat_linear(0.25, p) == doctest::Approx(0.5));
  CHECK(sat_linear(-3.0, p) == doctest::Approx(-1.0));  // saturates at -gain*band
  CHECK(sat_linear(0.5, p) == doctest::Approx(1.0));    // boundary is linear
  // odd
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-2.0, 2.0);
    CHECK(sat_linear(-x, p) == doctest::Approx(-sat_linear(x, p)).epsilon(1e-15));
  }
}

TEST_CASE("turn command quantization and sign") {
  ControllerParams p;
  p.target_level = 1.0;
  p.gain = 1.0;
  p.band = 0.5;
  const double u_bar = 2.0;
  // positive switching value steers with -u_bar
  CHECK(turn_command({1.2, 0.3}, p, u_bar) == -u_bar);
  // exactly zero argument maps to zero
  CHECK(turn_command({1.0, 0.0}, p, u_bar) == 0.0);
  // negative argument steers with +u_bar
  CHECK(turn_command({1.1, -0.3}, p, u_bar) == u_bar);

  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const double u = turn_command({rng.uniform(-2, 2), rng.uniform(-2, 2)}, p, u_bar);
    CHECK((u == u_bar || u == -u_bar || u == 0.0));
  }
}

TEST_CASE("switching function on and off the desired decay") {
  ControllerParams p;
  p.target_level = 0.0;
  p.gain = 1.0;
  p.band = 1.0;
  // on the desired dynamics d_dot = -sat(d - d0) the switching value is zero
  CHECK(switching_function({0.7, -0.7}, p) == 0.0);
  CHECK(switching_function({0.0, 0.2}, p) == doctest::Approx(0.2));
  // saturated ramp cancels the rate exactly
  CHECK(switching_function({2.0, -1.0}, p) == 0.0);
}

TEST_CASE("scale coherence: common positive rescale keeps the command") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    ControllerParams p;
    p.target_level = 0.0;
    p.gain = rng.uniform(0.1, 3.0);
    p.band = rng.uniform(0.1, 2.0);
    const double d = rng.uniform(-3.0, 3.0);
    const double d_dot = rng.uniform(-3.0, 3.0);
    const double k = rng.uniform(0.01, 50.0);
    ControllerParams scaled = p;
    scaled.band = k * p.band;
    const double u1 = turn_command({d, d_dot}, p, 1.0);
    const double u2 = turn_command({k * d, k * d_dot}, scaled, 1.0);
    CHECK(u1 == u2);
  }
}

TEST_CASE("exact measurement differentiates through the field") {
  // static distance field, heading straight at the center: the reading rises
  // at the vehicle speed
  const FieldPtr f = make_radial_field({std::make_shared<LinearDecayProfile>(), 1.0,
                                        std::make_shared<StaticPoint>(Vec2{0, 0})});
  Sensor sensor(MeasureMode::exact);
  const RobotState toward{3.0, 0.0, 3.14159265358979323846};
  const Measurement m = sensor.sample(*f, 0.0, toward, 1.4);
  CHECK(m.d == doctest::Approx(-3.0));
  CHECK(m.d_dot == doctest::Approx(1.4).epsilon(1e-12));

  // moving along the isoline: no change
  const RobotState along{3.0, 0.0, 3.14159265358979323846 / 2.0};
  CHECK(sensor.sample(*f, 0.0, along, 1.4).d_dot == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("finite differencing reproduces the derivative of sin t") {
  const TimeOnlyField f(+[](double t) { return std::sin(t); });
  Sensor sensor(MeasureMode::finite_difference);
  const RobotState pose{0, 0, 0};
  const double h = 1e-3;
  Measurement m{};
  // first sample reports zero rate
  m = sensor.sample(f, 1.0 - 2 * h, pose, 1.0);
  CHECK(m.d_dot == 0.0);
  sensor.sample(f, 1.0 - h, pose, 1.0);
  m = sensor.sample(f, 1.0, pose, 1.0);
  CHECK(std::abs(m.d_dot - std::cos(1.0)) < 5e-4);
}

TEST_CASE("the desired decay drives the reading to the target monotonically") {
  // scalar surrogate: d' = -sat(d - d0)
  ControllerParams p;
  p.target_level = 1.0;
  p.gain = 2.0;
  p.band = 0.25;
  double d = 3.0;
  double prev_err = std::abs(d - p.target_level);
  const double dt = 1e-3;
  for (int i = 0; i < 20000; ++i) {
    d += -sat_linear(d - p.target_level, p) * dt;
    const double err = std::abs(d - p.target_level);
    CHECK(err <= prev_err + 1e-15);
    prev_err = err;
  }
  CHECK(prev_err < 1e-5);
}
