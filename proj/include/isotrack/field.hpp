// Dynamic scalar fields D(t, r) with exact first and second derivatives.
#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "isotrack/errors.hpp"
#include "isotrack/geom.hpp"
#include "isotrack/path.hpp"

namespace isotrack {

/// Value and all first/second derivatives of a field at one (t, r).
struct FieldJet {
  double value = 0.0;
  Vec2 grad;        // spatial gradient
  Sym2 hess;        // spatial Hessian
  double dt = 0.0;  // partial derivative in t
  Vec2 grad_dt;     // spatial gradient of the t-derivative
  double dtt = 0.0; // second partial derivative in t
};

class Field {
 public:
  virtual ~Field() = default;
  virtual FieldJet jet(double t, Vec2 r) const = 0;
  virtual double value(double t, Vec2 r) const { return jet(t, r).value; }
};

using FieldPtr = std::shared_ptr<const Field>;

// ---------------------------------------------------------------------------
// Radial profiles f(z), z = distance from the moving center.

class RadialProfile {
 public:
  virtual ~RadialProfile() = default;
  virtual double f(double z) const = 0;
  virtual double df(double z) const = 0;
  virtual double ddf(double z) const = 0;
  /// Open interval of radii on which the profile is smooth.
  virtual std::pair<double, double> domain() const = 0;
  /// Radius z with f(z) = y; throws LevelOutOfRangeError if unattained.
  virtual double invert(double y) const = 0;
  /// True when second derivatives are exact rather than interpolated.
  virtual bool exact_second_derivative() const { return true; }
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

class GaussianProfile final : public RadialProfile {
 public:
  explicit GaussianProfile(double sigma);
  double f(double z) const override;
  double df(double z) const override;
  double ddf(double z) const override;
  std::pair<double, double> domain() const override;
  double invert(double y) const override;
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

/// f(z) = -z; the profile of a plain distance field.
class LinearDecayProfile final : public RadialProfile {
 public:
  double f(double z) const override { return -z; }
  double df(double) const override { return -1.0; }
  double ddf(double) const override { return 0.0; }
  std::pair<double, double> domain() const override;
  double invert(double y) const override;
};

/// Natural cubic spline through strictly decreasing samples. Second
/// derivatives come from the interpolant and are only O(h^2) accurate.
class TabulatedProfile final : public RadialProfile {
 public:
  TabulatedProfile(std::vector<double> z, std::vector<double> y);
  double f(double z) const override;
  double df(double z) const override;
  double ddf(double z) const override;
  std::pair<double, double> domain() const override;
  double invert(double y) const override;
  bool exact_second_derivative() const override { return false; }

 private:
  std::size_t segment(double z) const;
  std::vector<double> z_, y_, m_;  // m_: spline second derivatives at knots
};

// ---------------------------------------------------------------------------
// Field specifications and factories.

struct RadialSpec {
  ProfilePtr profile;
  double intensity = 1.0;  // c > 0
  PathPtr center;          // smooth t -> (position, velocity, acceleration)
};

struct AdvectionSpec {
  Vec2 center0;            // initial Gaussian center
  double sigma = 1.0;      // > 0
  double intensity = 1.0;  // c > 0
  Vec2 flow;               // constant transport velocity
};

/// D(t, r) = c * f(|r - center(t)|). Evaluation at the exact center is a
/// domain error: the profile argument 0 may not be smooth.
FieldPtr make_radial_field(const RadialSpec& spec);

/// Gaussian bump rigidly transported by a constant flow:
/// D(t, r) = D(0, r - flow * t), hence D'_t = -<flow, grad D> everywhere.
FieldPtr make_advected_field(const AdvectionSpec& spec);

/// Linear combination of fields; jets combine linearly. Useful to build
/// fields that deliberately contain critical points.
FieldPtr make_composed_field(std::vector<std::pair<double, FieldPtr>> terms);

}  // namespace isotrack
