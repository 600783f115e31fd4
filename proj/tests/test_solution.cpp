#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "nsexact/calculus.hpp"
#include "nsexact/solution.hpp"
#include "nsexact/verifier.hpp"
#include "test_support.hpp"

using namespace nsexact;
namespace nt = nsexact::test;

namespace {

Mollifier unit_phi() { return make_mollifier({MollifierKind::EvenBump1D, 1.0}); }

SolutionSpec fast_spec() {
  SolutionSpec spec;
  spec.kernel.radius = 0.5;
  spec.convolution_nodes = 24;
  return spec;
}

}  // namespace

TEST_CASE("psi profile solves psi'' = psi by construction") {
  for (const PsiSpec psi : {PsiSpec::cosh_profile(), PsiSpec::sinh_profile(), PsiSpec{0.3, -1.7}}) {
    for (double s : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
      CHECK(psi.value(s, 2) == psi.value(s, 0));
      CHECK(psi.value(s, 3) == psi.value(s, 1));
    }
  }
  CHECK(PsiSpec::cosh_profile().value(0.7) == doctest::Approx(std::cosh(0.7)).epsilon(1e-15));
  CHECK(PsiSpec::sinh_profile().value(0.7, 1) ==
        doctest::Approx(std::cosh(0.7)).epsilon(1e-15));
}

TEST_CASE("solution spec validation") {
  SolutionSpec good = fast_spec();
  CHECK_NOTHROW(good.validate());

  SolutionSpec bad_zeta = good;
  bad_zeta.zeta = 5.5;
  CHECK_THROWS_WITH_AS(bad_zeta.validate(),
                       doctest::Contains("zeta^2 = alpha^2 + beta^2"), std::invalid_argument);

  SolutionSpec zero_alpha = good;
  zero_alpha.alpha = 0.0;
  CHECK_THROWS_AS(zero_alpha.validate(), std::invalid_argument);

  SolutionSpec bad_nu = good;
  bad_nu.viscosity = -0.25;
  CHECK_THROWS_AS(bad_nu.validate(), std::invalid_argument);

  SolutionSpec bad_phi = good;
  bad_phi.phi.kind = MollifierKind::StandardBump3D;
  CHECK_THROWS_AS(bad_phi.validate(), std::invalid_argument);

  SolutionSpec bad_kernel = good;
  bad_kernel.kernel.kind = MollifierKind::EvenBump1D;
  CHECK_THROWS_AS(bad_kernel.validate(), std::invalid_argument);

  SolutionSpec bad_forcing = good;
  bad_forcing.forcing_potential = ScalarField::analytic(
      [](const Vec3&, double, const PartialIndex&) { return 0.0; }, 0, 0);
  CHECK_THROWS_AS(bad_forcing.validate(), std::invalid_argument);
}

TEST_CASE("inner integral matches the literal quadrature of the defining integrand") {
  const Mollifier phi = unit_phi();
  const PsiSpec psi = PsiSpec::cosh_profile();
  auto potential = std::make_shared<SeparablePotential>(3.0, 4.0, 5.0, psi, phi, 64);

  for (double z : {-0.8, 0.0, 0.4, 1.0}) {
    QuadratureSpec fine;
    fine.nodes = 200;
    fine.interval = {z - 1.0, z + 1.0};
    for (int k = 0; k <= 1; ++k) {
      const double literal = integrate_1d(
          [&](double r) { return phi.value_1d(z - r, k) * psi.value(5.0 * r); }, fine);
      CHECK(std::abs(potential->inner(z, k) - literal) <= 1e-9 * (1.0 + std::abs(literal)));
    }
  }
}

TEST_CASE("two integrations by parts: the phi'' route equals zeta^2 times the integral") {
  const Mollifier phi = unit_phi();
  const PsiSpec psi = PsiSpec::cosh_profile();
  const double zeta = 5.0;
  for (double z : {-0.9, -0.2, 0.5, 1.3}) {
    QuadratureSpec fine;
    fine.nodes = 200;
    fine.interval = {z - 1.0, z + 1.0};
    const double i0 = integrate_1d(
        [&](double r) { return phi.value_1d(z - r) * psi.value(zeta * r); }, fine);
    const double i2 = integrate_1d(
        [&](double r) { return phi.value_1d(z - r, 2) * psi.value(zeta * r); }, fine);
    CHECK(std::abs(i2 - zeta * zeta * i0) <= 1e-8 * (1.0 + std::abs(i2)));
  }
}

TEST_CASE("the field's inner second derivative satisfies I'' = zeta^2 I") {
  const Mollifier phi = unit_phi();
  auto potential =
      std::make_shared<SeparablePotential>(3.0, 4.0, 5.0, PsiSpec::cosh_profile(), phi, 64);
  for (double z : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const double gap = potential->inner(z, 2) - 25.0 * potential->inner(z, 0);
    CHECK(std::abs(gap) <= 1e-8 * (1.0 + std::abs(potential->inner(z, 0))));
  }
}

TEST_CASE("harmonicity of the separable potential on the verification grid") {
  const Mollifier phi = unit_phi();
  const SampleGrid grid = SampleGrid::tensor(1.0, 5, {0.0});
  const ScalarField g64 = make_harmonic_potential(3, 4, 5, PsiSpec::cosh_profile(), phi, 64);
  CHECK(harmonicity_check(g64, grid.points) <= 1e-8);

  const ScalarField g16 = make_harmonic_potential(3, 4, 5, PsiSpec::cosh_profile(), phi, 16);
  const ScalarField g32 = make_harmonic_potential(3, 4, 5, PsiSpec::cosh_profile(), phi, 32);
  const double e16 = harmonicity_check(g16, grid.points);
  const double e32 = harmonicity_check(g32, grid.points);
  CHECK(e16 >= 10.0 * e32);
}

TEST_CASE("unchecked construction with a broken wave vector is not harmonic") {
  const Mollifier phi = unit_phi();
  const ScalarField g =
      make_separable_potential(3, 4, 5.5, PsiSpec::cosh_profile(), phi, 64);
  const SampleGrid grid = SampleGrid::tensor(1.0, 5, {0.0});
  CHECK(harmonicity_check(g, grid.points) > 1e-2);
  CHECK_THROWS_AS(make_harmonic_potential(3, 4, 5.5, PsiSpec::cosh_profile(), phi, 64),
                  std::invalid_argument);
}

TEST_CASE("cosine-phase periodicity of the potential") {
  const Mollifier phi = unit_phi();
  const double alpha = 3, beta = 4, zeta = 5;
  const ScalarField g = make_harmonic_potential(alpha, beta, zeta,
                                                PsiSpec::cosh_profile(), phi, 64);
  std::mt19937 rng(5);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int rep = 0; rep < 20; ++rep) {
    const Vec3 x{nt::unit_symmetric(rng), nt::unit_symmetric(rng), nt::unit_symmetric(rng)};
    const double ref = g(x);
    // full period in x
    const double shifted = g({x.x + two_pi / alpha, x.y, x.z});
    CHECK(std::abs(shifted - ref) <= 1e-12 * (1.0 + std::abs(ref)));
    // phase-preserving translation along (beta, -alpha)
    const double m = 0.77;
    const double along = g({x.x + m * beta, x.y - m * alpha, x.z});
    CHECK(std::abs(along - ref) <= 1e-12 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("growth in z is controlled by the psi envelope") {
  const Mollifier phi = unit_phi();
  const double zeta = 5.0;
  const ScalarField g =
      make_harmonic_potential(3, 4, zeta, PsiSpec::cosh_profile(), phi, 64);
  std::mt19937 rng(17);
  for (double z : {-5.0, -3.5, -2.0, 2.0, 3.5, 5.0}) {
    const double envelope = std::cosh(zeta * (std::abs(z) + 1.0));  // ||phi||_1 = 1
    for (int rep = 0; rep < 5; ++rep) {
      const Vec3 x{nt::unit_symmetric(rng), nt::unit_symmetric(rng), z};
      CHECK(std::abs(g(x)) <= envelope * (1.0 + 1e-5));
    }
  }
}

TEST_CASE("initial velocity is the gradient of the potential") {
  const VectorField u_linear = make_initial_velocity(ScalarField::polynomial({{1.0, 1, 0, 0}}));
  CHECK(u_linear({4.0, 5.0, 6.0}) == Vec3{1.0, 0.0, 0.0});

  const ScalarField saddle = ScalarField::polynomial({{1.0, 2, 0, 0}, {-1.0, 0, 2, 0}});
  const VectorField u_saddle = make_initial_velocity(saddle);
  CHECK(u_saddle({1.5, 2.0, 0.0}) == Vec3{3.0, -4.0, 0.0});
  CHECK(divergence(u_saddle)({0.3, 0.3, 0.3}) == 0.0);
  CHECK(curl(u_saddle)({0.3, 0.3, 0.3}) == Vec3{0.0, 0.0, 0.0});

  const ScalarField value_only = ScalarField::analytic(
      [](const Vec3&, double, const PartialIndex&) { return 1.0; }, 1, 0);
  CHECK_THROWS_AS(make_initial_velocity(value_only), CapabilityError);
}

TEST_CASE("constants pass through the time convolution unchanged") {
  QuadratureSpec quad;
  quad.nodes = 24;
  const Mollifier h = make_mollifier({MollifierKind::StandardBump3D, 1.0}, quad);
  const VectorField u = convolve_in_time(VectorField::constant({2.0, -3.0, 0.5}), h, quad);
  for (double t : {0.0, 0.3, 1.7}) {
    const Vec3 v = u({0.4, -0.9, 0.2}, t);
    CHECK(std::abs(v.x - 2.0) < 1e-12);
    CHECK(std::abs(v.y + 3.0) < 1e-12);
    CHECK(std::abs(v.z - 0.5) < 1e-12);
  }
}

TEST_CASE("radial kernels reproduce the initial data at positive times") {
  SolutionSpec spec = fast_spec();
  spec.convolution_nodes = 96;
  const NSSolution sol = build_solution(spec);
  for (double t : {0.5, 1.0}) {
    for (const Vec3& x : {Vec3{1, 1, 1}, Vec3{-1, 0.5, -1}, Vec3{0.2, -0.7, 0.9}}) {
      const Vec3 diff = sol.velocity(x, t) - sol.initial_velocity(x, 0.0);
      CHECK(diff.max_abs() <= 1e-8);
    }
  }
}

TEST_CASE("time zero evaluates by direct substitution") {
  const NSSolution sol = build_solution(fast_spec());
  const Vec3 x{0.4, -0.2, 0.8};
  CHECK(sol.velocity(x, 0.0) == sol.initial_velocity(x, 0.0));
  CHECK(sol.velocity(x, 1e-13) == sol.initial_velocity(x, 0.0));
}

TEST_CASE("potential of time: linear potential is a fixed point for even kernels") {
  QuadratureSpec quad;
  quad.nodes = 24;
  const Mollifier h = make_mollifier({MollifierKind::StandardBump3D, 1.0}, quad);
  const ScalarField g = ScalarField::polynomial({{1.0, 1, 0, 0}});
  const ScalarField phi_t = potential_of_time(g, h, quad);
  for (double t : {0.2, 1.0}) {
    CHECK(std::abs(phi_t({0.7, 0.1, -0.3}, t) - 0.7) < 1e-12);
    // time derivative vanishes because the first moment does
    CHECK(std::abs(phi_t.partial({0.7, 0.1, -0.3}, t, {0, 0, 0, 1})) < 1e-12);
  }
}

TEST_CASE("harmonic polynomials are fixed points for radial kernels") {
  QuadratureSpec quad;
  quad.nodes = 24;
  const Mollifier h = make_mollifier({MollifierKind::StandardBump3D, 1.0}, quad);
  const ScalarField g = ScalarField::polynomial({{1.0, 2, 0, 0}, {-1.0, 0, 2, 0}});
  const ScalarField phi_t = potential_of_time(g, h, quad);
  for (double t : {0.4, 2.0}) {
    const Vec3 x{0.6, -0.8, 0.3};
    CHECK(std::abs(phi_t(x, t) - g(x)) <= 1e-8 * (1.0 + std::abs(g(x))));
  }
}

TEST_CASE("gradient of the potential equals the convolved velocity term by term") {
  SolutionSpec spec = fast_spec();
  const NSSolution sol = build_solution(spec);
  std::mt19937 rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    const Vec3 x{nt::unit_symmetric(rng), nt::unit_symmetric(rng), nt::unit_symmetric(rng)};
    const double t = 0.05 + 0.5 * (nt::unit_symmetric(rng) + 1.0);
    for (int i = 0; i < 3; ++i) {
      const double from_potential = sol.potential.partial(x, t, PartialIndex::space(i));
      const double from_velocity = sol.velocity.component(i)(x, t);
      CHECK(std::abs(from_potential - from_velocity) <=
            1e-8 * (1.0 + std::abs(from_velocity)));
    }
  }
}

TEST_CASE("derivatives commute with the convolution") {
  SolutionSpec spec = fast_spec();
  spec.convolution_nodes = 48;
  const NSSolution sol = build_solution(spec);
  FDSpec fd;
  const Vec3 x{0.3, -0.5, 0.4};
  const double t = 0.6;
  for (int i = 0; i < 3; ++i) {
    const ScalarField& ui = sol.velocity.component(i);
    // space
    const double analytic_dx = ui.partial(x, t, {1, 0, 0, 0});
    const double fd_dx = fd_partial(ui, x, t, {1, 0, 0, 0}, fd);
    CHECK(std::abs(analytic_dx - fd_dx) <= 1e-6 * (1.0 + std::abs(analytic_dx)));
    // time
    const double analytic_dt = ui.partial(x, t, {0, 0, 0, 1});
    const double fd_dt = fd_partial(ui, x, t, {0, 0, 0, 1}, fd);
    CHECK(std::abs(analytic_dt - fd_dt) <= 1e-6 * (1.0 + std::abs(analytic_dt)));
  }
}

TEST_CASE("pressure recovery: constant flow gives p = -1/2") {
  QuadratureSpec quad;
  quad.nodes = 24;
  const Mollifier h = make_mollifier({MollifierKind::StandardBump3D, 1.0}, quad);
  const ScalarField g = ScalarField::polynomial({{1.0, 1, 0, 0}});
  const ScalarField phi_t = potential_of_time(g, h, quad);
  const ScalarField p = recover_pressure(phi_t, ScalarField::constant(0.0));
  for (double t : {0.0, 0.5, 1.5})
    CHECK(std::abs(p({0.2, 0.9, -0.4}, t) + 0.5) < 1e-12);
}

TEST_CASE("pressure recovery: zero flow gives p = F") {
  SolutionSpec spec = fast_spec();
  spec.psi = PsiSpec{0.0, 0.0};
  spec.forcing_potential =
      ScalarField::polynomial({{1.0, 1, 0, 0}, {1.0, 0, 1, 0}, {1.0, 0, 0, 1}});
  const NSSolution sol = build_solution(spec);
  const Vec3 x{0.7, -0.3, 0.2};
  CHECK(sol.velocity(x, 0.5) == Vec3{0.0, 0.0, 0.0});
  CHECK(std::abs(sol.pressure(x, 0.5) - sol.provenance.forcing_potential(x)) < 1e-12);
  CHECK(std::abs(sol.pressure(x, 0.5) - 0.6) < 1e-12);
}

TEST_CASE("build rejects a broken wave-vector constraint") {
  SolutionSpec spec = fast_spec();
  spec.zeta = 5.4;
  CHECK_THROWS_WITH_AS(build_solution(spec),
                       doctest::Contains("zeta^2 = alpha^2 + beta^2"), std::invalid_argument);
}

TEST_CASE("build errors carry the failing stage") {
  SolutionSpec spec = fast_spec();
  spec.kernel.radius = 1e-150;  // normalization integral underflows to zero
  try {
    build_solution(spec);
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(e.stage() == "normalize-kernel");
    CHECK(std::string(e.what()).find("normalize-kernel") != std::string::npos);
  }
}

TEST_CASE("shifted kernels drift at first order in t") {
  SolutionSpec spec = fast_spec();
  spec.kernel = MollifierSpec{MollifierKind::ShiftedBump3D, 0.5, Vec3{0.15, 0.0, 0.0}};
  const NSSolution sol = build_solution(spec);
  const Vec3 x{0.5, 0.5, 0.5};
  const double d1 = (sol.velocity(x, 1e-1) - sol.initial_velocity(x, 0.0)).max_abs();
  const double d2 = (sol.velocity(x, 1e-2) - sol.initial_velocity(x, 0.0)).max_abs();
  CHECK(d1 / d2 == doctest::Approx(10.0).epsilon(0.25));  // slope ~ 1
  CHECK(d1 > 1e-3);
}
