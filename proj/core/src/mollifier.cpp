#include "nsexact/mollifier.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace nsexact {

namespace {
constexpr double kPi = std::numbers::pi;
}

double bump_profile(double q, int order) {
  const double t = 1.0 - q * q;
  if (t <= 0.0) return 0.0;
  const double e = std::exp(-1.0 / t);
  if (e == 0.0) return 0.0;  // underflow near the boundary; prefactors stay finite
  switch (order) {
    case 0:
      return e;
    case 1:
      return -2.0 * q / (t * t) * e;
    case 2:
      return (6.0 * q * q * q * q - 2.0) / (t * t * t * t) * e;
    case 3: {
      const double q2 = q * q;
      const double num = -24.0 * q * (1.0 + q2) * t * t + 12.0 * q * (1.0 + 3.0 * q2) * t -
                         8.0 * q * q2;
      return num / (t * t * t * t * t * t) * e;
    }
    default:
      throw CapabilityError("bump_profile: derivatives available to order 3, got " +
                            std::to_string(order));
  }
}

void MollifierSpec::validate() const {
  auto positive = [](double r) { return r > 0.0 && std::isfinite(r); };
  switch (kind) {
    case MollifierKind::StandardBump3D:
    case MollifierKind::EvenBump1D:
      if (!positive(radius)) throw std::invalid_argument("mollifier radius must be positive");
      break;
    case MollifierKind::ShiftedBump3D:
      if (!positive(radius)) throw std::invalid_argument("mollifier radius must be positive");
      if (!offset.finite()) throw std::invalid_argument("mollifier offset must be finite");
      break;
    case MollifierKind::ProductBump3D:
      for (int a = 0; a < 3; ++a)
        if (!positive(radii[a]))
          throw std::invalid_argument("mollifier per-axis radii must be positive");
      break;
  }
}

namespace {

// Radial bump A * b(|x-c|/rho); analytic partials to total order 2.
class RadialBumpField final : public ScalarFieldImpl {
 public:
  RadialBumpField(Vec3 center, double rho, double amplitude)
      : center_(center), rho_(rho), amp_(amplitude) {}

  double evaluate(const Vec3& x, double, const PartialIndex& d) const override {
    if (d.dt > 0) return 0.0;
    const Vec3 rel = x - center_;
    const double r = rel.norm();
    const double q = r / rho_;
    if (q >= 1.0) return 0.0;
    const int order = d.spatial_order();
    if (order == 0) return amp_ * bump_profile(q);
    const double tiny = 1e-12 * rho_;
    if (order == 1) {
      const int axis = d.dx ? 0 : (d.dy ? 1 : 2);
      if (r < tiny) return 0.0;
      return amp_ * bump_profile(q, 1) / rho_ * rel[axis] / r;
    }
    // order == 2: pure (i,i) or mixed (i,j)
    int i = -1, j = -1;
    if (d.dx == 2) { i = j = 0; }
    else if (d.dy == 2) { i = j = 1; }
    else if (d.dz == 2) { i = j = 2; }
    else if (d.dx == 1 && d.dy == 1) { i = 0; j = 1; }
    else if (d.dx == 1 && d.dz == 1) { i = 0; j = 2; }
    else { i = 1; j = 2; }
    const double b2 = bump_profile(q, 2);
    if (r < tiny) return (i == j) ? amp_ * b2 / (rho_ * rho_) : 0.0;
    const double ni = rel[i] / r, nj = rel[j] / r;
    const double b1 = bump_profile(q, 1);
    const double kron = (i == j) ? 1.0 : 0.0;
    return amp_ * (b2 / (rho_ * rho_) * ni * nj + b1 / (rho_ * r) * (kron - ni * nj));
  }
  bool supports(const PartialIndex& d) const override { return d.spatial_order() <= 2; }

 private:
  Vec3 center_;
  double rho_;
  double amp_;
};

// Product of 1-D bumps, one radius per axis; partials to order 3 per axis.
class ProductBumpField final : public ScalarFieldImpl {
 public:
  ProductBumpField(Vec3 radii, double amplitude) : radii_(radii), amp_(amplitude) {}
  double evaluate(const Vec3& x, double, const PartialIndex& d) const override {
    if (d.dt > 0) return 0.0;
    double v = amp_;
    for (int a = 0; a < 3; ++a) {
      const int k = d.spatial(a);
      double factor = bump_profile(x[a] / radii_[a], k);
      for (int m = 0; m < k; ++m) factor /= radii_[a];
      v *= factor;
      if (v == 0.0) return 0.0;
    }
    return v;
  }
  bool supports(const PartialIndex& d) const override {
    return d.dx <= 3 && d.dy <= 3 && d.dz <= 3;
  }

 private:
  Vec3 radii_;
  double amp_;
};

// Even 1-D profile exposed as a field of the first coordinate.
class Bump1DField final : public ScalarFieldImpl {
 public:
  Bump1DField(double rho, double amplitude) : rho_(rho), amp_(amplitude) {}
  double evaluate(const Vec3& x, double, const PartialIndex& d) const override {
    if (d.dt > 0 || d.dy > 0 || d.dz > 0) return 0.0;
    double v = amp_ * bump_profile(x.x / rho_, d.dx);
    for (int m = 0; m < d.dx; ++m) v /= rho_;
    return v;
  }
  bool supports(const PartialIndex& d) const override { return d.dx <= 3; }

 private:
  double rho_;
  double amp_;
};

}  // namespace

Mollifier::Mollifier(MollifierSpec spec, ScalarField field, double amplitude, Box3 support)
    : spec_(spec), field_(std::move(field)), amplitude_(amplitude), support_(support) {}

double Mollifier::value_1d(double s, int order) const {
  if (spec_.kind != MollifierKind::EvenBump1D)
    throw std::logic_error("value_1d is defined for the 1-D even profile only");
  double v = amplitude_ * bump_profile(s / spec_.radius, order);
  for (int m = 0; m < order; ++m) v /= spec_.radius;
  return v;
}

Mollifier Mollifier::scaled(const Mollifier& m, double factor) {
  return Mollifier(m.spec_, factor * m.field_, factor * m.amplitude_, m.support_);
}

Mollifier make_mollifier(const MollifierSpec& spec, const QuadratureSpec& quad) {
  spec.validate();
  QuadratureSpec norm_quad = quad;
  double raw_integral = 0.0;
  Box3 support;

  switch (spec.kind) {
    case MollifierKind::EvenBump1D: {
      norm_quad.interval = {-spec.radius, spec.radius};
      raw_integral =
          integrate_1d([&](double s) { return bump_profile(s / spec.radius); }, norm_quad);
      support = {{-spec.radius, 0.0, 0.0}, {spec.radius, 0.0, 0.0}};
      break;
    }
    case MollifierKind::StandardBump3D:
    case MollifierKind::ShiftedBump3D: {
      const Vec3 c = (spec.kind == MollifierKind::ShiftedBump3D) ? spec.offset : Vec3{};
      const Vec3 r{spec.radius, spec.radius, spec.radius};
      support = {c - r, c + r};
      norm_quad.box = support;
      raw_integral = integrate_3d_box(
          [&](const Vec3& x) { return bump_profile((x - c).norm() / spec.radius); }, norm_quad);
      break;
    }
    case MollifierKind::ProductBump3D: {
      support = {-spec.radii, spec.radii};
      raw_integral = 1.0;
      for (int a = 0; a < 3; ++a) {
        norm_quad.interval = {-spec.radii[a], spec.radii[a]};
        raw_integral *=
            integrate_1d([&](double s) { return bump_profile(s / spec.radii[a]); }, norm_quad);
      }
      break;
    }
  }

  if (!(raw_integral > 0.0) || !std::isfinite(raw_integral))
    throw std::runtime_error("make_mollifier: normalization quadrature failed");
  const double amplitude = 1.0 / raw_integral;

  ScalarField field;
  switch (spec.kind) {
    case MollifierKind::EvenBump1D:
      field = ScalarField(std::make_shared<Bump1DField>(spec.radius, amplitude));
      break;
    case MollifierKind::StandardBump3D:
      field = ScalarField(std::make_shared<RadialBumpField>(Vec3{}, spec.radius, amplitude));
      break;
    case MollifierKind::ShiftedBump3D:
      field = ScalarField(std::make_shared<RadialBumpField>(spec.offset, spec.radius, amplitude));
      break;
    case MollifierKind::ProductBump3D:
      field = ScalarField(std::make_shared<ProductBumpField>(spec.radii, amplitude));
      break;
  }
  return Mollifier(spec, field, amplitude, support);
}

double RadialDensity::value(double r) const { return amplitude * std::exp(-decay_rate * r); }

double RadialDensity::mass_within(double R) const {
  const double a = decay_rate * R;
  return 1.0 - std::exp(-a) * (1.0 + a + 0.5 * a * a);
}

RadialDensity make_radial_density() {
  // c_3 = pi^((3+1)/2) / Gamma((3+1)/2) = pi^2 / Gamma(2) = pi^2; the unit
  // total mass is pinned by 4*pi * int_0^inf r^2 e^(-2*pi*r) dr = 1/pi^2.
  return RadialDensity{2.0 * kPi, kPi * kPi};
}

}  // namespace nsexact
