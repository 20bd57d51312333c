// Sample-and-hold closed loop: measure, command, step.
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "isotrack/scenario.hpp"

namespace isotrack {

struct SimOptions {
  double horizon = 10.0;  // seconds
  double dt = 1e-3;       // sampling/integration step; the control is held over it
  MeasureMode mode = MeasureMode::exact;
  bool diagnostics = false;  // log isoline quantities at the vehicle
};

struct TrajectoryRow {
  double t = 0.0;
  double x = 0.0, y = 0.0, theta = 0.0;
  double d = 0.0, d_dot = 0.0;
  double u = 0.0, s = 0.0;
  // filled when diagnostics are enabled
  double lambda = 0.0, rho = 0.0, kappa = 0.0, omega = 0.0;
};

struct RunSummary {
  double final_error = std::numeric_limits<double>::quiet_NaN();
  bool entered_band = false;
  double first_entry_time = std::numeric_limits<double>::quiet_NaN();
  /// Fraction of the samples from first entry onward that stay within
  /// band_width of the target level.
  double in_band_fraction = 0.0;
  /// band (the linear half-width) plus one chattering quantum.
  double band_width = 0.0;
  /// Largest single-step change of the measured value: the spatial scale of
  /// chattering under sample-and-hold switching.
  double chatter_quantum = 0.0;
  bool stayed_in_zone = true;
  bool aborted = false;
  std::string abort_reason;
  double abort_time = std::numeric_limits<double>::quiet_NaN();
};

struct SimResult {
  std::vector<TrajectoryRow> rows;
  RunSummary summary;
  bool diagnostics = false;
};

/// Runs the closed loop over the horizon. Field-domain and critical-point
/// errors abort the run (partial rows are kept and the summary says why);
/// leaving the operational zone is recorded but does not abort.
SimResult simulate(const Scenario& scenario, const SimOptions& options);

/// In-band fraction of the rows from first band entry onward, for an
/// arbitrary band half-width (used when widening the band by the chattering
/// quantum or converting to range units).
double in_band_fraction_after_entry(const SimResult& result, double target_level,
                                    double band_half_width);

}  // namespace isotrack
