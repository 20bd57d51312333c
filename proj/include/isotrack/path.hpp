// Twice continuously differentiable planar paths with analytic derivatives.
// Used both as moving field centers and as pursuit targets.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>

#include "isotrack/geom.hpp"

namespace isotrack {

struct PathPoint {
  Vec2 pos;
  Vec2 vel;
  Vec2 acc;
};

class PathC2 {
 public:
  virtual ~PathC2() = default;
  virtual PathPoint at(double t) const = 0;
  /// Supremum of the velocity norm over all t.
  virtual double max_speed() const = 0;
  /// Supremum of the acceleration norm over all t.
  virtual double max_accel() const = 0;
};

using PathPtr = std::shared_ptr<const PathC2>;

class StaticPoint final : public PathC2 {
 public:
  explicit StaticPoint(Vec2 p) : p_(p) {}
  PathPoint at(double) const override { return {p_, {}, {}}; }
  double max_speed() const override { return 0.0; }
  double max_accel() const override { return 0.0; }

 private:
  Vec2 p_;
};

class LinePath final : public PathC2 {
 public:
  LinePath(Vec2 start, Vec2 velocity) : p0_(start), v_(velocity) {}
  PathPoint at(double t) const override { return {p0_ + t * v_, v_, {}}; }
  double max_speed() const override { return v_.norm(); }
  double max_accel() const override { return 0.0; }

 private:
  Vec2 p0_, v_;
};

class CircleOrbit final : public PathC2 {
 public:
  CircleOrbit(Vec2 center, double radius, double angular_rate, double phase = 0.0)
      : c_(center), r_(radius), w_(angular_rate), phi_(phase) {}

  PathPoint at(double t) const override {
    const double a = w_ * t + phi_;
    const Vec2 e = unit_from_angle(a);
    return {c_ + r_ * e, r_ * w_ * e.perp(), -(r_ * w_ * w_) * e};
  }
  double max_speed() const override { return std::abs(r_ * w_); }
  double max_accel() const override { return std::abs(r_ * w_ * w_); }

 private:
  Vec2 c_;
  double r_, w_, phi_;
};

/// Straight drift plus a C^2 lateral weave: the lateral offset blends between
/// -amplitude and +amplitude with a quintic ramp, so velocity and acceleration
/// are continuous at every knot.
class SlalomPath final : public PathC2 {
 public:
  SlalomPath(Vec2 start, double forward_speed, double amplitude, double half_period)
      : p0_(start), fwd_(forward_speed), amp_(amplitude), half_(half_period) {}

  PathPoint at(double t) const override {
    const double k = std::floor(t / half_);
    const double tau = t / half_ - k;
    const double sign = (static_cast<long long>(k) % 2 == 0) ? 1.0 : -1.0;
    // quintic smoothstep: zero first and second derivatives at tau = 0, 1
    const double p = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
    const double dp = 30.0 * tau * tau * (tau - 1.0) * (tau - 1.0);
    const double ddp = 60.0 * tau * (tau - 1.0) * (2.0 * tau - 1.0);
    const double y = sign * amp_ * (2.0 * p - 1.0);
    const double yd = sign * amp_ * 2.0 * dp / half_;
    const double ydd = sign * amp_ * 2.0 * ddp / (half_ * half_);
    return {{p0_.x + fwd_ * t, p0_.y + y}, {fwd_, yd}, {0.0, ydd}};
  }
  double max_speed() const override {
    const double yd_max = 2.0 * amp_ * 1.875 / half_;  // max of 30 tau^2 (tau-1)^2 is 15/8
    return std::hypot(fwd_, yd_max);
  }
  double max_accel() const override {
    // max of |60 tau (tau-1)(2 tau-1)| on [0,1] is 10/sqrt(3)
    return 2.0 * amp_ * (10.0 / std::sqrt(3.0)) / (half_ * half_);
  }

 private:
  Vec2 p0_;
  double fwd_, amp_, half_;
};

}  // namespace isotrack
