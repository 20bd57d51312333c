// Feasibility conditions for isoline tracking: pointwise necessary
// conditions, the global tuning inequalities, their radial and advected
// specializations, and empirical estimation of the zone constants.
#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "isotrack/control.hpp"
#include "isotrack/field.hpp"
#include "isotrack/isoline.hpp"
#include "isotrack/report.hpp"
#include "isotrack/vehicle.hpp"

namespace isotrack {

/// Spacetime slab where the field value stays between two levels; all bound
/// constants are assumed there and the vehicle is meant never to leave it.
struct OperationalZone {
  double level_min = 0.0;
  double level_max = 0.0;

  bool contains(double d) const { return d >= level_min && d <= level_max; }
};

/// Constants bounding the isoline quantities inside the operational zone.
struct FieldBounds {
  double max_inv_density = 0.0;     // density >= 1/max_inv_density in the zone
  double front_speed_margin = 0.0;  // speed - |front_speed| >= this everywhere
  double turn_rate_margin = 0.0;    // turn limit minus the riding turn rate
  double max_front_speed = 0.0;
  double max_growth_tangent = 0.0;
  double max_growth_normal = 0.0;
  double max_curvature = 0.0;
  double max_growth_evolution = 0.0;
  double max_front_accel = 0.0;
};

/// The two tuning inequalities on (gain, band) that guarantee tracking, plus
/// the implicit requirement that sigma(mu*) is real. Strict inequalities are
/// evaluated with zero tolerance; exact equality reports infeasible.
FeasibilityReport check_tuning_inequalities(const FieldBounds& bounds, const RobotParams& robot,
                                      const ControllerParams& ctrl);

/// Largest mu* = max_inv_density * gain * band that the conservative
/// semi-strip/hyperbola form of the tuning inequalities admits for the chosen
/// zeta in (0,1). Every mu* below the returned value satisfies the exact
/// inequalities as well.
double semistrip_bound(double zeta, const FieldBounds& bounds, const RobotParams& robot,
                       double gain);

/// Pointwise necessary conditions for riding the isoline through one point:
/// the front is no faster than the vehicle, and the turn rate needed on
/// either side is within the limit.
FeasibilityReport check_riding_limits(const IsolineQuantities& q, const RobotParams& robot);

struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  int nx = 0;
  double y_min = 0.0, y_max = 0.0;
  int ny = 0;
  double t_min = 0.0, t_max = 0.0;
  int nt = 1;
};

struct ZoneScan {
  FieldBounds bounds;
  std::size_t samples_in_zone = 0;
  double min_density = std::numeric_limits<double>::infinity();
  bool density_floor_violated = false;  // set when a requested floor is breached
  /// Sampled extrema can undershoot true extrema by roughly this relative
  /// amount at the grid resolutions used in practice.
  double resolution_slack = 0.05;
};

/// Estimate the zone constants by sampling the isoline quantities over the
/// grid points whose field value lies inside the zone. The results are
/// sampled estimates, not guarantees. required_max_inv_density, when
/// positive, flags samples whose density drops below its reciprocal.
ZoneScan scan_zone(const Field& field, const OperationalZone& zone,
                   const RobotParams& robot, const GridSpec& grid,
                   double required_max_inv_density = 0.0);

/// Initial-phase admissibility: the smallest k (up to k_max) such that over
/// [0, 2*pi*k/turn_limit] the gradient direction at the initial position
/// turns through at most 2*pi*(k-1) in total variation and both saturated
/// turning discs stay inside the zone. Net rotation is reported alongside.
FeasibilityReport check_initial_phase(const Field& field, const RobotState& initial,
                                    const RobotParams& robot, const OperationalZone& zone,
                                    int k_max = 8, double sample_dt = 1e-2);

/// Necessary maneuverability condition for radial fields: the supremum over
/// the normal component of the center velocity is taken on a 1000-point grid
/// with endpoints; a slack below the grid sensitivity is noted as marginal.
FeasibilityReport necessary_radial(double speed, double center_speed_max,
                                   double center_accel_max, double turn_limit,
                                   double radius_min);

/// Left-hand side of the simplified (conservative) form of the necessary
/// condition; when this is <= turn_limit the full condition holds.
double necessary_radial_simplified(double speed, double center_speed_max,
                                   double center_accel_max, double radius_min);

/// Known a priori bounds for a radial scenario.
struct RadialBounds {
  double r_in_min = 0.0, r_in_max = 0.0;  // initial distance to the center
  double center_speed_max = 0.0;
  double center_accel_max = 0.0;
  double c_min = 1.0, c_max = 1.0;  // intensity range
};

/// Profile knowledge reduced to interval bounds: the radius range of the
/// target isoline over the intensity uncertainty, a lower bound on |f'| and
/// an upper bound on |f''|/|f'| over the final working radius interval.
struct RadialProfileData {
  double level_radius_min = 0.0;
  double level_radius_max = 0.0;
  double min_abs_slope = 0.0;
  double max_growth_normal = 0.0;
};

/// Everything the radial specialization of the tuning inequalities needs,
/// once all interval arithmetic has been done.
struct RadialLimitInputs {
  double speed = 0.0;
  double turn_limit = 0.0;
  double gain = 0.0;
  double mu_star = 0.0;
  double center_speed_max = 0.0;
  double center_accel_max = 0.0;
  double radius_min = 0.0;
  double radius_plus = 0.0;
  double radius_prime_min = 0.0;   // shrunk initial-distance bound
  double radius_prime_plus = 0.0;  // grown initial-distance bound
  double max_growth_normal = 0.0;
  double turn_rate_margin = 0.0;  // available Delta_u
  double far_init_value = 0.0;    // initial distance lower bound
  double far_init_bound = 0.0;    // (2v + 4*pi*v0)/turn_limit
};

/// The radial form of the tuning inequalities, margins keyed radial.limt.*.
FeasibilityReport radial_limit_check(const RadialLimitInputs& in);

/// Sufficient tracking condition for a radial field with uncertain intensity
/// and center, with profile knowledge given as interval bounds.
FeasibilityReport sufficient_radial(const RadialBounds& rb, const RobotParams& robot,
                                    const ControllerParams& ctrl,
                                    const RadialProfileData& profile, double d0);

/// Same, deriving the profile data from an explicit profile by dense scans
/// over the working radius interval.
FeasibilityReport sufficient_radial(const RadialBounds& rb, const RobotParams& robot,
                                    const ControllerParams& ctrl,
                                    const RadialProfile& profile, double d0);

/// Known a priori bounds for the advected-Gaussian scenario.
struct AdvectionBounds {
  double sigma_min = 0.0, sigma_max = 0.0;
  double c_min = 0.0;                       // lower intensity bound, > d0
  std::optional<double> c_max;              // optional; unbounded when absent
  double flow_max = 0.0;                    // upper bound on |flow|
  double r_in_min = 0.0, r_in_max = 0.0;
};

/// All derived quantities of the advected-Gaussian specialization.
struct AdvectionDerived {
  double level_radius = 0.0;   // radius bound of the tracked isoline
  double transit = 0.0;        // (2v + 4*pi*flow_max)/turn_limit
  double r_prime_minus = 0.0;  // r_in_min - transit
  double r_prime_plus = 0.0;   // r_in_max + transit
  double radius_min = 0.0;
  double radius_plus = 0.0;
  double min_abs_slope = 0.0;  // lower bound of |f'| over the radius interval
  double mu_star = 0.0;
  double max_growth_normal = 0.0;
  double turn_rate_margin = 0.0;
};

/// Computes the closed-form parameter set of the advected-Gaussian scenario
/// for the given rate cap mu = gain*band. Throws NonsensicalLevelError unless
/// c_min > d0 > 0.
AdvectionDerived advection_parameters(const AdvectionBounds& ab, const RobotParams& robot,
                                      double d0, double mu);

/// Feasibility report for the advected-Gaussian scenario.
FeasibilityReport check_advection(const AdvectionBounds& ab, const RobotParams& robot,
                                  const ControllerParams& ctrl, double d0);

}  // namespace isotrack
