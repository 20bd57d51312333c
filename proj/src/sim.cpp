#include "isotrack/sim.hpp"

#include <cmath>

#include "isotrack/isoline.hpp"

namespace isotrack {

SimResult simulate(const Scenario& scenario, const SimOptions& options) {
  if (!(options.horizon > 0.0) || !(options.dt > 0.0))
    throw ConfigError("simulation horizon and step must be positive");
  if (options.dt > options.horizon)
    throw ConfigError("simulation step exceeds the horizon");

  const long long n_steps = std::llround(options.horizon / options.dt);
  SimResult result;
  result.diagnostics = options.diagnostics;
  result.rows.reserve(static_cast<std::size_t>(n_steps) + 1);

  Sensor sensor(options.mode);
  RobotState state = scenario.initial;
  const double u_bar = scenario.robot.turn_rate_limit;

  for (long long i = 0; i <= n_steps; ++i) {
    const double t = i * options.dt;
    TrajectoryRow row;
    row.t = t;
    row.x = state.x;
    row.y = state.y;
    row.theta = wrap_2pi(state.theta);
    try {
      const Measurement m = sensor.sample(*scenario.field, t, state, scenario.robot.speed);
      row.d = m.d;
      row.d_dot = m.d_dot;
      row.u = turn_command(m, scenario.ctrl, u_bar);
      row.s = switching_function(m, scenario.ctrl);
      if (options.diagnostics) {
        const IsolineQuantities q = quantities(scenario.field->jet(t, state.position()));
        row.lambda = q.front_speed;
        row.rho = q.density;
        row.kappa = q.curvature;
        row.omega = q.rotation_rate;
      }
    } catch (const Error& e) {
      result.summary.aborted = true;
      result.summary.abort_reason = e.what();
      result.summary.abort_time = t;
      break;
    }
    result.rows.push_back(row);
    if (i < n_steps) state = step(state, row.u, scenario.robot, options.dt);
  }

  // summary statistics
  RunSummary& sum = result.summary;
  const double d0 = scenario.ctrl.target_level;
  double quantum = 0.0;
  std::size_t entry_index = result.rows.size();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const TrajectoryRow& row = result.rows[i];
    if (i > 0) quantum = std::max(quantum, std::abs(row.d - result.rows[i - 1].d));
    if (!scenario.zone.contains(row.d)) sum.stayed_in_zone = false;
    if (!sum.entered_band && std::abs(row.d - d0) <= scenario.ctrl.band) {
      sum.entered_band = true;
      sum.first_entry_time = row.t;
      entry_index = i;
    }
  }
  sum.chatter_quantum = quantum;
  sum.band_width = scenario.ctrl.band + quantum;
  if (!result.rows.empty()) sum.final_error = std::abs(result.rows.back().d - d0);
  if (sum.entered_band) {
    std::size_t in = 0, total = 0;
    for (std::size_t i = entry_index; i < result.rows.size(); ++i, ++total)
      if (std::abs(result.rows[i].d - d0) <= sum.band_width) ++in;
    sum.in_band_fraction = total ? static_cast<double>(in) / total : 0.0;
  }
  return result;
}

double in_band_fraction_after_entry(const SimResult& result, double target_level,
                                    double band_half_width) {
  std::size_t start = result.rows.size();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (std::abs(result.rows[i].d - target_level) <= band_half_width) {
      start = i;
      break;
    }
  }
  if (start == result.rows.size()) return 0.0;
  std::size_t in = 0, total = 0;
  for (std::size_t i = start; i < result.rows.size(); ++i, ++total)
    if (std::abs(result.rows[i].d - target_level) <= band_half_width) ++in;
  return static_cast<double>(in) / static_cast<double>(total);
}

}  // namespace isotrack
