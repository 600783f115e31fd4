#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsexact/mollifier.hpp"
#include "nsexact/quadrature.hpp"

using namespace nsexact;

namespace {
constexpr double kPi = std::numbers::pi;

Mollifier standard_bump(double radius = 1.0) {
  return make_mollifier({MollifierKind::StandardBump3D, radius});
}
}  // namespace

TEST_CASE("bump profile derivatives agree with centered differences") {
  const double h = 1e-5;
  for (double s : {0.0, 0.2, 0.45, 0.7, 0.85, 0.93}) {
    const double fd1 = (bump_profile(s + h) - bump_profile(s - h)) / (2 * h);
    const double fd2 = (bump_profile(s + h) - 2 * bump_profile(s) + bump_profile(s - h)) / (h * h);
    const double fd3 = (bump_profile(s + 2 * h) - 2 * bump_profile(s + h) +
                        2 * bump_profile(s - h) - bump_profile(s - 2 * h)) /
                       (2 * h * h * h);
    CHECK(bump_profile(s, 1) == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(bump_profile(s, 2) == doctest::Approx(fd2).epsilon(1e-4));
    CHECK(bump_profile(s, 3) == doctest::Approx(fd3).epsilon(2e-2));
  }
  CHECK_THROWS_AS(bump_profile(0.5, 4), CapabilityError);
}

TEST_CASE("compact support is exact") {
  const Mollifier h3 = standard_bump();
  CHECK(h3({1.0, 0.0, 0.0}) == 0.0);
  CHECK(h3({0.9, 0.9, 0.9}) == 0.0);
  CHECK(h3({-1.0000001, 0.0, 0.0}) == 0.0);
  CHECK(h3({0.5, 0.0, 0.0}) > 0.0);

  const Mollifier phi = make_mollifier({MollifierKind::EvenBump1D, 0.8});
  CHECK(phi.value_1d(0.8) == 0.0);
  CHECK(phi.value_1d(-2.0) == 0.0);
  CHECK(phi.value_1d(0.0) > 0.0);

  MollifierSpec shifted{MollifierKind::ShiftedBump3D, 1.0, Vec3{0.3, 0.0, 0.0}};
  const Mollifier hs = make_mollifier(shifted);
  CHECK(hs({1.3, 0.0, 0.0}) == 0.0);
  CHECK(hs({-0.75, 0.0, 0.0}) == 0.0);
  CHECK(hs({0.3, 0.0, 0.0}) > 0.0);

  MollifierSpec product{MollifierKind::ProductBump3D, 1.0, Vec3{}, Vec3{1.0, 0.8, 0.6}};
  const Mollifier hp = make_mollifier(product);
  CHECK(hp({0.0, 0.0, 0.6}) == 0.0);
  CHECK(hp({0.99, 0.0, 0.0}) > 0.0);
  CHECK(hp({0.0, 0.79, 0.55}) > 0.0);
}

TEST_CASE("every kind re-integrates to one under its normalizing rule") {
  QuadratureSpec quad;
  quad.nodes = 24;
  SUBCASE("standard") {
    const Mollifier h = make_mollifier({MollifierKind::StandardBump3D, 1.0}, quad);
    QuadratureSpec q;
    q.nodes = 24;
    q.box = h.support_box();
    CHECK(std::abs(integrate_3d_box([&](const Vec3& y) { return h(y); }, q) - 1.0) < 1e-13);
  }
  SUBCASE("shifted") {
    const Mollifier h =
        make_mollifier({MollifierKind::ShiftedBump3D, 1.0, Vec3{0.3, 0.0, 0.0}}, quad);
    QuadratureSpec q;
    q.nodes = 24;
    q.box = h.support_box();
    CHECK(std::abs(integrate_3d_box([&](const Vec3& y) { return h(y); }, q) - 1.0) < 1e-13);
  }
  SUBCASE("product") {
    const Mollifier h = make_mollifier(
        {MollifierKind::ProductBump3D, 1.0, Vec3{}, Vec3{1.0, 0.8, 0.6}}, quad);
    QuadratureSpec q;
    q.nodes = 24;
    q.box = h.support_box();
    CHECK(std::abs(integrate_3d_box([&](const Vec3& y) { return h(y); }, q) - 1.0) < 1e-13);
  }
  SUBCASE("even 1-D") {
    const Mollifier phi = make_mollifier({MollifierKind::EvenBump1D, 1.0}, quad);
    QuadratureSpec q;
    q.nodes = 24;
    q.interval = {-1.0, 1.0};
    CHECK(std::abs(integrate_1d([&](double s) { return phi.value_1d(s); }, q) - 1.0) < 1e-13);
  }
}

TEST_CASE("independent re-integration at finer nodes stays within quadrature grade") {
  const Mollifier h = standard_bump();
  QuadratureSpec q;
  q.nodes = 48;
  q.box = h.support_box();
  const double mass = integrate_3d_box([&](const Vec3& y) { return h(y); }, q);
  CHECK(std::abs(mass - 1.0) < 2e-6);  // true error of the 24-node normalization
}

TEST_CASE("evenness is exact") {
  const Mollifier phi = make_mollifier({MollifierKind::EvenBump1D, 1.0});
  for (int i = 0; i <= 50; ++i) {
    const double s = i / 50.0;
    CHECK(phi.value_1d(s) == phi.value_1d(-s));
  }
  const Mollifier h = standard_bump();
  CHECK(h({0.3, -0.2, 0.5}) == h({-0.3, 0.2, -0.5}));
}

TEST_CASE("profiles vanish smoothly at the support boundary") {
  const Mollifier phi = make_mollifier({MollifierKind::EvenBump1D, 1.0});
  CHECK(std::abs(phi.value_1d(1.0 - 1e-8)) < 1e-10);
  CHECK(std::abs(phi.value_1d(1.0 - 1e-4, 1)) < 1e-10);
  CHECK(std::abs(phi.value_1d(1.0 - 1e-4, 2)) < 1e-10);

  // second finite-difference derivatives stay bounded across the support
  const Mollifier h = standard_bump();
  FDSpec fd;
  for (double r : {0.0, 0.4, 0.8, 0.95, 0.999}) {
    const Vec3 x{r, 0.0, 0.0};
    const double dxx = fd_partial(h.field(), x, 0.0, {2, 0, 0, 0}, fd);
    CHECK(std::isfinite(dxx));
    CHECK(std::abs(dxx) < 50.0);
  }
}

TEST_CASE("analytic and finite-difference derivatives of the 3-D bump agree") {
  const Mollifier h = standard_bump();
  FDSpec fd;
  const PartialIndex idx[] = {{1, 0, 0, 0}, {0, 0, 1, 0}, {2, 0, 0, 0},
                              {0, 1, 1, 0}, {1, 0, 1, 0}, {0, 0, 2, 0}};
  for (const Vec3& x : {Vec3{0.2, -0.1, 0.3}, Vec3{0.0, 0.0, 0.0}, Vec3{0.5, 0.4, -0.3}}) {
    for (const auto& d : idx) {
      const double analytic = h.field().partial(x, 0.0, d);
      const double numeric = fd_partial(h.field(), x, 0.0, d, fd);
      CHECK(std::abs(analytic - numeric) < 1e-6 * (1.0 + std::abs(analytic)));
    }
  }
}

TEST_CASE("shifted kernel keeps unit mass but gains a first moment") {
  QuadratureSpec quad;
  quad.nodes = 32;
  const Mollifier h =
      make_mollifier({MollifierKind::ShiftedBump3D, 1.0, Vec3{0.3, 0.0, 0.0}}, quad);
  QuadratureSpec q;
  q.nodes = 48;
  q.box = h.support_box();
  const double m1 = integrate_3d_box([&](const Vec3& y) { return y.x * h(y); }, q);
  CHECK(m1 == doctest::Approx(0.3).epsilon(1e-5));
  CHECK(std::abs(m1) > 0.1);
  const double m1y = integrate_3d_box([&](const Vec3& y) { return y.y * h(y); }, q);
  CHECK(std::abs(m1y) < 1e-8);
}

TEST_CASE("product kernel is even with distinct second moments") {
  QuadratureSpec quad;
  quad.nodes = 32;
  const Mollifier h = make_mollifier(
      {MollifierKind::ProductBump3D, 1.0, Vec3{}, Vec3{1.0, 0.8, 0.6}}, quad);
  QuadratureSpec q;
  q.nodes = 48;
  q.box = h.support_box();
  double m2[3];
  for (int a = 0; a < 3; ++a)
    m2[a] = integrate_3d_box([&](const Vec3& y) { return y[a] * y[a] * h(y); }, q);
  CHECK(m2[0] > m2[1]);
  CHECK(m2[1] > m2[2]);
  const double m1 = integrate_3d_box([&](const Vec3& y) { return y.x * h(y); }, q);
  CHECK(std::abs(m1) < 1e-10);
}

TEST_CASE("radial density constants") {
  const RadialDensity rho = make_radial_density();
  CHECK(rho.amplitude == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(rho.amplitude == doctest::Approx(9.8696044010893586).epsilon(1e-14));
  CHECK(rho.decay_rate == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(rho({1.0, 0.0, 0.0}) ==
        doctest::Approx(kPi * kPi * std::exp(-2.0 * kPi)).epsilon(1e-14));

  // closed-form mass at R = 6 matches the incomplete-gamma tail
  const double a = 12.0 * kPi;
  const double expected = 1.0 - std::exp(-a) * (1.0 + a + 0.5 * a * a);
  CHECK(rho.mass_within(6.0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(std::abs(rho.mass_within(6.0) - 1.0) < 1e-10);

  // and the quadrature sees the same mass
  const double numeric = integrate_radial_exp(ScalarField::constant(1.0), {}, 6.0, 48);
  CHECK(numeric == doctest::Approx(rho.mass_within(6.0)).epsilon(1e-12));
}

TEST_CASE("invalid mollifier specs are rejected") {
  CHECK_THROWS_AS(make_mollifier({MollifierKind::StandardBump3D, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_mollifier({MollifierKind::EvenBump1D, -1.0}), std::invalid_argument);
  MollifierSpec bad_product{MollifierKind::ProductBump3D, 1.0, Vec3{}, Vec3{1.0, 0.0, 0.5}};
  CHECK_THROWS_AS(make_mollifier(bad_product), std::invalid_argument);
}

TEST_CASE("scaled copies break normalization by the given factor") {
  const Mollifier h = standard_bump();
  const Mollifier bad = Mollifier::scaled(h, 1.25);
  QuadratureSpec q;
  q.nodes = 24;
  q.box = bad.support_box();
  const double mass = integrate_3d_box([&](const Vec3& y) { return bad(y); }, q);
  CHECK(mass == doctest::Approx(1.25).epsilon(1e-12));
}
