// Packaged tracking scenarios: a field, an operational zone, controller and
// vehicle parameters, and the feasibility checks that apply to them.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isotrack/control.hpp"
#include "isotrack/field.hpp"
#include "isotrack/vehicle.hpp"
#include "isotrack/verify.hpp"

namespace isotrack {

/// A smooth target/center trajectory with declared supremum norms. The
/// declared values are honesty-checked against dense sampling when a scenario
/// is built.
struct TargetPath {
  PathPtr path;
  double speed_max = 0.0;
  double accel_max = 0.0;
  double validation_horizon = 1000.0;
};

/// TargetPath with the declared norms taken from the path's own suprema.
TargetPath target_path(PathPtr path, double validation_horizon = 1000.0);

struct NamedCheck {
  std::string name;
  std::function<FeasibilityReport()> run;
};

struct Scenario {
  std::string name;
  FieldPtr field;
  OperationalZone zone;
  RobotParams robot;
  ControllerParams ctrl;
  RobotState initial;
  std::pair<double, double> start_band;  // admissible initial field values
  std::vector<NamedCheck> checks;
  std::map<std::string, std::string> provenance;  // bound name -> origin

  // populated for the radial family; used for range diagnostics and plots
  PathPtr center;
  ProfilePtr profile;
  double intensity = 1.0;

  /// Center and radius of the isoline at the given level and time, when the
  /// field is of the radial family.
  std::optional<Circle> isoline_circle(double level, double t) const;

  /// Runs every attached check and merges the reports.
  FeasibilityReport verify_all() const;
};

/// Range-keeping behind a moving target from range-only measurements: the
/// field is minus the distance to the target and the tracked level is minus
/// the commanded range. The field is undefined exactly at the target.
Scenario build_escort(const TargetPath& target, double range, const RobotParams& robot,
                      const ControllerParams& ctrl, const RobotState& initial,
                      std::optional<std::pair<double, double>> declared_initial_range = {});

/// Generic radial field with a time-invariant profile and uncertain
/// intensity/center. Throws LevelOutOfRangeError when the requested level is
/// not attained for some admissible intensity.
Scenario build_radial(const RadialSpec& spec, const RadialBounds& bounds, double d0,
                      const RobotParams& robot, const ControllerParams& ctrl,
                      const RobotState& initial);

/// Gaussian concentration transported by a constant flow. Throws
/// NonsensicalLevelError when the level is not below the guaranteed peak.
Scenario build_advection(const AdvectionSpec& spec, const AdvectionBounds& bounds,
                         double d0, const RobotParams& robot, const ControllerParams& ctrl,
                         const RobotState& initial);

}  // namespace isotrack
