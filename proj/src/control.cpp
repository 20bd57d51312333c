#include "isotrack/control.hpp"

#include <cmath>

namespace isotrack {

double sat_linear(double p, const ControllerParams& params) {
  if (std::abs(p) <= params.band) return params.gain * p;
  return (p > 0.0 ? 1.0 : -1.0) * params.rate_cap();
}

double switching_function(const Measurement& m, const ControllerParams& params) {
  return m.d_dot + sat_linear(m.d - params.target_level, params);
}

double turn_command(const Measurement& m, const ControllerParams& params,
                    double turn_limit) {
  const double s = switching_function(m, params);
  if (s > 0.0) return -turn_limit;
  if (s < 0.0) return turn_limit;
  return 0.0;
}

Measurement Sensor::sample(const Field& field, double t, const RobotState& state,
                           double speed) {
  Measurement m;
  if (mode_ == MeasureMode::exact) {
    const FieldJet jet = field.jet(t, state.position());
    m.d = jet.value;
    m.d_dot = jet.dt + speed * dot(jet.grad, unit_from_angle(state.theta));
    return m;
  }
  m.d = field.value(t, state.position());
  m.d_dot = has_prev_ && t > prev_t_ ? (m.d - prev_d_) / (t - prev_t_) : 0.0;
  has_prev_ = true;
  prev_t_ = t;
  prev_d_ = m.d;
  return m;
}

}  // namespace isotrack
