#include "isotrack/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isotrack {

// ---------------------------------------------------------------------------
// GaussianProfile

GaussianProfile::GaussianProfile(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0)) throw Error("gaussian profile needs sigma > 0");
}

double GaussianProfile::f(double z) const {
  return std::exp(-z * z / (2.0 * sigma_ * sigma_));
}

double GaussianProfile::df(double z) const {
  return -(z / (sigma_ * sigma_)) * f(z);
}

double GaussianProfile::ddf(double z) const {
  const double s2 = sigma_ * sigma_;
  return ((z * z - s2) / (s2 * s2)) * f(z);
}

std::pair<double, double> GaussianProfile::domain() const {
  return {0.0, std::numeric_limits<double>::infinity()};
}

double GaussianProfile::invert(double y) const {
  if (!(y > 0.0 && y <= 1.0))
    throw LevelOutOfRangeError("gaussian profile level outside (0, 1]");
  return sigma_ * std::sqrt(-2.0 * std::log(y));
}

// ---------------------------------------------------------------------------
// LinearDecayProfile

std::pair<double, double> LinearDecayProfile::domain() const {
  return {0.0, std::numeric_limits<double>::infinity()};
}

double LinearDecayProfile::invert(double y) const {
  if (!(y <= 0.0)) throw LevelOutOfRangeError("distance profile level must be <= 0");
  return -y;
}

// ---------------------------------------------------------------------------
// TabulatedProfile

TabulatedProfile::TabulatedProfile(std::vector<double> z, std::vector<double> y)
    : z_(std::move(z)), y_(std::move(y)) {
  const std::size_t n = z_.size();
  if (n < 3 || y_.size() != n) throw Error("tabulated profile needs >= 3 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(z_[i] > z_[i - 1])) throw Error("tabulated profile radii must increase");
    if (!(y_[i] < y_[i - 1])) throw Error("tabulated profile must strictly decrease");
  }
  // Natural cubic spline: solve the tridiagonal system for knot second
  // derivatives m_ with m_[0] = m_[n-1] = 0.
  m_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  diag[0] = 1.0;
  diag[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = z_[i] - z_[i - 1];
    const double h1 = z_[i + 1] - z_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  // forward elimination (lower entry of row i is h0, zero in first/last rows)
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double h0 = z_[i] - z_[i - 1];
    const double w = h0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

std::size_t TabulatedProfile::segment(double z) const {
  if (!(z >= z_.front() && z <= z_.back()))
    throw FieldDomainError("tabulated profile evaluated outside its radius table");
  const auto it = std::upper_bound(z_.begin(), z_.end(), z);
  std::size_t i = static_cast<std::size_t>(it - z_.begin());
  if (i > 0) --i;
  if (i + 1 >= z_.size()) i = z_.size() - 2;
  return i;
}

double TabulatedProfile::f(double z) const {
  const std::size_t i = segment(z);
  const double h = z_[i + 1] - z_[i];
  const double a = (z_[i + 1] - z) / h;
  const double b = (z - z_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double TabulatedProfile::df(double z) const {
  const std::size_t i = segment(z);
  const double h = z_[i + 1] - z_[i];
  const double a = (z_[i + 1] - z) / h;
  const double b = (z - z_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double TabulatedProfile::ddf(double z) const {
  const std::size_t i = segment(z);
  const double h = z_[i + 1] - z_[i];
  const double a = (z_[i + 1] - z) / h;
  const double b = (z - z_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

std::pair<double, double> TabulatedProfile::domain() const {
  return {z_.front(), z_.back()};
}

double TabulatedProfile::invert(double y) const {
  if (!(y <= y_.front() && y >= y_.back()))
    throw LevelOutOfRangeError("tabulated profile level outside sampled range");
  double lo = z_.front(), hi = z_.back();
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Radial field: D(t, r) = c * f(|r - center(t)|)

namespace {

class RadialField final : public Field {
 public:
  explicit RadialField(RadialSpec spec) : spec_(std::move(spec)) {
    if (!spec_.profile || !spec_.center) throw Error("radial field needs profile and center");
    if (!(spec_.intensity > 0.0)) throw Error("radial field needs intensity > 0");
  }

  FieldJet jet(double t, Vec2 r) const override {
    const PathPoint c = spec_.center->at(t);
    const Vec2 d = r - c.pos;
    const double radius = d.norm();
    check_radius(radius);
    const Vec2 e = d / radius;
    const double cf = spec_.intensity;
    const double f1 = spec_.profile->df(radius);
    const double f2 = spec_.profile->ddf(radius);

    FieldJet out;
    out.value = cf * spec_.profile->f(radius);
    out.grad = (cf * f1) * e;
    // Hessian of c*f(|d|): f'' along e, f'/|d| across it.
    const Sym2 ee = outer(e);
    out.hess = (cf * f2) * ee + (cf * f1 / radius) * (sym2_identity() + (-1.0) * ee);

    const double vn = dot(e, c.vel);               // center velocity toward r
    const double vt2 = c.vel.norm2() - vn * vn;    // squared transverse part
    out.dt = -cf * f1 * vn;
    out.grad_dt = (-cf * f2 * vn) * e - (cf * f1 / radius) * (c.vel - vn * e);
    out.dtt = cf * f2 * vn * vn + cf * f1 * (vt2 / radius - dot(e, c.acc));
    return out;
  }

  double value(double t, Vec2 r) const override {
    const double radius = (r - spec_.center->at(t).pos).norm();
    check_radius(radius);
    return spec_.intensity * spec_.profile->f(radius);
  }

 private:
  void check_radius(double radius) const {
    const auto [lo, hi] = spec_.profile->domain();
    if (radius <= lo || radius > hi)
      throw FieldDomainError("radial field evaluated at or beyond its smoothness limits");
  }

  RadialSpec spec_;
};

// Advected Gaussian evaluated through the coordinate shift r - flow*t, so the
// transport identity D(t, r) = D(0, r - flow*t) holds to the last bit.
class AdvectedField final : public Field {
 public:
  explicit AdvectedField(AdvectionSpec spec) : spec_(std::move(spec)) {
    if (!(spec_.sigma > 0.0) || !(spec_.intensity > 0.0))
      throw Error("advected field needs sigma > 0 and intensity > 0");
  }

  FieldJet jet(double t, Vec2 r) const override {
    const Vec2 shifted = r - t * spec_.flow;
    const Vec2 d = shifted - spec_.center0;
    const double s2 = spec_.sigma * spec_.sigma;
    const double g = spec_.intensity * std::exp(-d.norm2() / (2.0 * s2));

    FieldJet out;
    out.value = g;
    out.grad = (-g / s2) * d;
    out.hess = (g / (s2 * s2)) * outer(d) + (-g / s2) * sym2_identity();
    out.dt = -dot(spec_.flow, out.grad);
    out.grad_dt = (-1.0) * (out.hess * spec_.flow);
    out.dtt = dot(spec_.flow, out.hess * spec_.flow);
    return out;
  }

  double value(double t, Vec2 r) const override {
    const Vec2 d = (r - t * spec_.flow) - spec_.center0;
    return spec_.intensity * std::exp(-d.norm2() / (2.0 * spec_.sigma * spec_.sigma));
  }

 private:
  AdvectionSpec spec_;
};

class ComposedField final : public Field {
 public:
  explicit ComposedField(std::vector<std::pair<double, FieldPtr>> terms)
      : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error("composed field needs at least one term");
    for (const auto& [w, f] : terms_)
      if (!f) throw Error("composed field has a null term");
  }

  FieldJet jet(double t, Vec2 r) const override {
    FieldJet out;
    for (const auto& [w, f] : terms_) {
      const FieldJet j = f->jet(t, r);
      out.value += w * j.value;
      out.grad += w * j.grad;
      out.hess = out.hess + w * j.hess;
      out.dt += w * j.dt;
      out.grad_dt += w * j.grad_dt;
      out.dtt += w * j.dtt;
    }
    return out;
  }

  double value(double t, Vec2 r) const override {
    double v = 0.0;
    for (const auto& [w, f] : terms_) v += w * f->value(t, r);
    return v;
  }

 private:
  std::vector<std::pair<double, FieldPtr>> terms_;
};

}  // namespace

FieldPtr make_radial_field(const RadialSpec& spec) {
  return std::make_shared<RadialField>(spec);
}

FieldPtr make_advected_field(const AdvectionSpec& spec) {
  return std::make_shared<AdvectedField>(spec);
}

FieldPtr make_composed_field(std::vector<std::pair<double, FieldPtr>> terms) {
  return std::make_shared<ComposedField>(std::move(terms));
}

}  // namespace isotrack
