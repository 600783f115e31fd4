#pragma once

#include "nsexact/field.hpp"
#include "nsexact/quadrature.hpp"
#include "nsexact/vec3.hpp"

namespace nsexact {

/// Unit bump profile exp(-1/(1-q^2)) on |q| < 1, zero outside, and its
/// derivatives up to order 3. Exactly even in q for order 0 and 2.
double bump_profile(double q, int order = 0);

enum class MollifierKind {
  StandardBump3D,  // radial bump centered at the origin
  EvenBump1D,      // even 1-D profile
  ShiftedBump3D,   // radial bump translated by a fixed offset (non-even)
  ProductBump3D,   // product of 1-D bumps with distinct per-axis radii
                   // (even in every coordinate but not radial)
};

struct MollifierSpec {
  MollifierKind kind = MollifierKind::StandardBump3D;
  double radius = 1.0;          // isotropic kinds and the 1-D profile
  Vec3 offset{0.0, 0.0, 0.0};   // ShiftedBump3D only
  Vec3 radii{1.0, 0.8, 0.6};    // ProductBump3D per-axis support radii

  void validate() const;
  bool is_even() const { return kind != MollifierKind::ShiftedBump3D; }
  bool is_radial() const { return kind == MollifierKind::StandardBump3D; }
  bool is_one_dimensional() const { return kind == MollifierKind::EvenBump1D; }
};

/// A normalized smooth compactly supported weight. Immutable; evaluation is
/// exactly zero outside the support.
class Mollifier {
 public:
  Mollifier(MollifierSpec spec, ScalarField field, double amplitude, Box3 support);

  const MollifierSpec& spec() const { return spec_; }
  const ScalarField& field() const { return field_; }
  /// Multiplier applied to the raw profile so the integral is one.
  double amplitude() const { return amplitude_; }
  /// Axis-aligned box enclosing the support (the support itself is a ball for
  /// the radial kinds).
  const Box3& support_box() const { return support_; }
  bool is_even() const { return spec_.is_even(); }
  bool is_radial() const { return spec_.is_radial(); }

  double operator()(const Vec3& x) const { return field_(x, 0.0); }
  /// 1-D profile access (EvenBump1D only): value and derivatives to order 3.
  double value_1d(double s, int order = 0) const;

  /// Copy with the field multiplied by `factor` (breaks unit normalization;
  /// used for defect injection).
  static Mollifier scaled(const Mollifier& m, double factor);

 private:
  MollifierSpec spec_;
  ScalarField field_;
  double amplitude_;
  Box3 support_;
};

/// Builds the normalized weight; the constant is computed with the given
/// quadrature (24 nodes per axis by default) and recorded in the result.
Mollifier make_mollifier(const MollifierSpec& spec, const QuadratureSpec& quad = {});

/// The radial probability density pi^2 exp(-2*pi*|x|) on R^3.
struct RadialDensity {
  double decay_rate;  // 2*pi
  double amplitude;   // pi^2

  double value(double r) const;
  double operator()(const Vec3& x) const { return value(x.norm()); }
  /// Closed-form mass inside radius R; tends to one as R grows.
  double mass_within(double R) const;
};

RadialDensity make_radial_density();

}  // namespace nsexact
