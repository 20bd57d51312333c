// The sign-type navigation law and its measurement pipeline.
#pragma once

#include "isotrack/field.hpp"
#include "isotrack/geom.hpp"
#include "isotrack/vehicle.hpp"

namespace isotrack {

struct ControllerParams {
  double target_level = 0.0;  // the field value to acquire and hold
  double gain = 1.0;          // > 0, linear feedback gain (1/s)
  double band = 1.0;          // > 0, half-width of the linear region

  /// Saturated commanded rate: gain * band.
  double rate_cap() const { return gain * band; }
};

struct Measurement {
  double d = 0.0;      // field value at the vehicle
  double d_dot = 0.0;  // its time derivative along the trajectory
};

/// Linear ramp with saturation: gain*p inside |p| <= band, else
/// sign(p)*gain*band. Continuous and odd.
double sat_linear(double p, const ControllerParams& params);

/// The switching quantity s = d_dot + sat_linear(d - target); its sign is
/// what the navigation law negates. s == 0 on the desired first-order decay.
double switching_function(const Measurement& m, const ControllerParams& params);

/// Turn command: -sign(s) * turn_limit, with sign(0) defined as 0. The output
/// is always exactly one of {-turn_limit, 0, +turn_limit}.
double turn_command(const Measurement& m, const ControllerParams& params,
                    double turn_limit);

enum class MeasureMode { exact, finite_difference };

/// Produces (d, d_dot) at the vehicle. Exact mode differentiates through the
/// field jet; finite-difference mode divides the change in d since the last
/// sample by the elapsed time (first sample reports d_dot = 0).
class Sensor {
 public:
  explicit Sensor(MeasureMode mode = MeasureMode::exact) : mode_(mode) {}

  Measurement sample(const Field& field, double t, const RobotState& state,
                     double speed);
  void reset() { has_prev_ = false; }
  MeasureMode mode() const { return mode_; }

 private:
  MeasureMode mode_;
  bool has_prev_ = false;
  double prev_t_ = 0.0;
  double prev_d_ = 0.0;
};

}  // namespace isotrack
