#pragma once

#include <functional>
#include <vector>

#include "nsexact/field.hpp"
#include "nsexact/vec3.hpp"

namespace nsexact {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

struct Box3 {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};
};

/// Fixed-node deterministic quadrature settings. `nodes` is per axis for the
/// tensor-product 3-D rule and the radius count for the radial rule.
struct QuadratureSpec {
  int nodes = 24;
  Interval interval{};
  Box3 box{};
  double truncation_radius = 6.0;

  void validate_1d() const;
  void validate_3d() const;
  void validate_radial() const;
};

/// Gauss-Legendre rule on [-1,1]. Tables are computed once (Newton on the
/// Legendre recurrence) and cached; lookups are thread-safe.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

/// Fixed spherical rule, exact for spherical harmonics of degree <= 7:
/// 4-node Gauss-Legendre in cos(theta) times 8 uniform azimuthal nodes.
/// Weights sum to 4*pi.
struct SphereRule {
  struct Point {
    Vec3 dir;       // unit vector
    double weight;  // surface weight
  };
  std::vector<Point> points;
};
const SphereRule& sphere_rule_deg7();

/// Gauss-Legendre on spec.interval; exact for polynomials of degree
/// <= 2*nodes - 1.
double integrate_1d(const std::function<double(double)>& f, const QuadratureSpec& spec);

/// Tensor-product Gauss-Legendre over spec.box.
double integrate_3d_box(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec);

/// Truncated integral of g(center - y) against the radial probability density
/// pi^2 exp(-2*pi*|y|) over the ball |y| <= R: Gauss-Legendre in radius times
/// the degree-7 spherical rule. g is sampled at time 0.
double integrate_radial_exp(const ScalarField& g, const Vec3& center, double R, int nodes);

/// Mass of the radial density inside radius R (closed form):
/// 1 - exp(-2*pi*R) * (1 + 2*pi*R + 2*pi^2*R^2).
double radial_exp_mass(double R);

}  // namespace nsexact
