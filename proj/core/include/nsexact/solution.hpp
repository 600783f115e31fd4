#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "nsexact/calculus.hpp"
#include "nsexact/field.hpp"
#include "nsexact/mollifier.hpp"
#include "nsexact/quadrature.hpp"

namespace nsexact {

/// Profile controlling growth along z: psi(s) = a e^s + b e^{-s}, the full
/// solution space of psi'' = psi, so the second-derivative identity is a type
/// invariant rather than a trusted input.
struct PsiSpec {
  double a = 0.5;
  double b = 0.5;

  double value(double s, int order = 0) const;
  bool is_zero() const { return a == 0.0 && b == 0.0; }

  static PsiSpec cosh_profile() { return {0.5, 0.5}; }
  static PsiSpec sinh_profile() { return {0.5, -0.5}; }
};

/// Parameters of one constructed flow. The wave vector satisfies
/// zeta^2 = alpha^2 + beta^2 (enforced at validation); the forcing enters
/// only through its potential F (f = grad F), which keeps the conservativity
/// hypothesis unviolable.
struct SolutionSpec {
  double alpha = 3.0;
  double beta = 4.0;
  double zeta = 5.0;
  PsiSpec psi{};
  MollifierSpec phi{MollifierKind::EvenBump1D, 1.0};
  MollifierSpec kernel{MollifierKind::StandardBump3D, 1.0};
  double viscosity = 1.0;
  ScalarField forcing_potential = ScalarField::constant(0.0);
  int potential_nodes = 128;     // 1-D nodes for the inner integral of g
  int convolution_nodes = 64;    // per-axis nodes for the kernel integral
  int normalization_nodes = 24;  // nodes for normalizing the 1-D profile

  void validate() const;
};

/// An upstream stage of build_solution failed; the message names the stage.
class BuildError : public std::runtime_error {
 public:
  BuildError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// g(x,y,z) = I(z) cos(alpha x + beta y) with I(z) the Gauss-Legendre value
/// of the inner integral of phi against psi(zeta .). x/y derivatives are
/// analytic through the cosine factor. The first z derivative differentiates
/// phi under the integral; higher orders then differentiate the psi factor,
/// which is exact because psi'' = psi holds by construction. The integrand is
/// reduced to [0, radius] through phi's evenness (exact symmetry), which
/// doubles the effective node density at a fixed node count.
class SeparablePotential final : public ScalarFieldImpl {
 public:
  SeparablePotential(double alpha, double beta, double zeta, PsiSpec psi, Mollifier phi,
                     int nodes);

  /// I_k(z): k-th derivative of the inner integral, k <= 3.
  double inner(double z, int order = 0) const;

  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override;
  bool supports(const PartialIndex& d) const override;
  void evaluate_many(const Vec3& x, double t, std::span<const PartialIndex> ds,
                     std::span<double> out) const override;

 private:
  double alpha_, beta_, zeta_;
  PsiSpec psi_;
  Mollifier phi_;
  int nodes_;
  // Factored Gauss-Legendre sums over [0, radius]:
  //   I_0(z) = c0_ * (a e^{zeta z} + b e^{-zeta z})
  //   I_1(z) = d1_ * (a e^{zeta z} - b e^{-zeta z})          (phi' under the integral)
  //   I_2(z) = zeta   * d1_ * (a e^{zeta z} + b e^{-zeta z}) (exact derivative of I_1)
  //   I_3(z) = zeta^2 * d1_ * (a e^{zeta z} - b e^{-zeta z})
  // d1_ equals zeta*c0_ up to the quadrature error of the integration-by-parts
  // identity, which is what the harmonicity checks measure.
  double c0_ = 0.0;
  double d1_ = 0.0;
};

/// Checked builder: requires zeta^2 = alpha^2 + beta^2 (relative 1e-12),
/// nonzero parameters and an even 1-D phi. The result is harmonic up to
/// quadrature error.
ScalarField make_harmonic_potential(double alpha, double beta, double zeta, const PsiSpec& psi,
                                    const Mollifier& phi, int nodes);

/// Same construction without the wave-vector constraint; the result is NOT
/// harmonic when the constraint is violated. Exists for defect injection.
ScalarField make_separable_potential(double alpha, double beta, double zeta, const PsiSpec& psi,
                                     const Mollifier& phi, int nodes);

/// u0 = grad g; requires order-2 access on g so the result can be
/// differentiated once more.
VectorField make_initial_velocity(const ScalarField& g);

/// Kernel samples and combined weights for the convolution integral over the
/// kernel's support box; shared between the velocity components and the
/// potential so their quadrature sums agree term by term.
struct ConvolutionTable {
  std::vector<Vec3> points;
  std::vector<double> weights;  // Gauss-Legendre weight times kernel value
  int nodes_per_axis = 0;
};

std::shared_ptr<const ConvolutionTable> make_convolution_table(const Mollifier& kernel,
                                                               int nodes_per_axis);

/// u(x,t) = integral of u0(x - t y) h(y) dy over supp h. At |t| < 1e-12 the
/// value path substitutes u0 directly; spatial and time derivatives are taken
/// under the integral (dt <= 1). The base field is sampled at time zero.
VectorField convolve_in_time(const VectorField& u0, const Mollifier& kernel,
                             const QuadratureSpec& quad);
VectorField convolve_in_time(const VectorField& u0,
                             std::shared_ptr<const ConvolutionTable> table);

/// Scalar potential of the convolved flow: phi_t(x) = integral of
/// g(x - t y) h(y) dy, so grad phi_t equals the convolved velocity term by
/// term when both share one table.
ScalarField potential_of_time(const ScalarField& g, const Mollifier& kernel,
                              const QuadratureSpec& quad);
ScalarField potential_of_time(const ScalarField& g,
                              std::shared_ptr<const ConvolutionTable> table);

/// Unsteady-Bernoulli pressure p = F - d(phi_t)/dt - |grad phi_t|^2 / 2 with
/// the time gauge fixed to zero. Exposes value and first spatial derivatives.
ScalarField recover_pressure(const ScalarField& potential, const ScalarField& forcing_potential);

/// The assembled flow and everything needed to adjudicate it.
struct NSSolution {
  VectorField velocity;
  ScalarField pressure;
  ScalarField potential;           // phi_t, grad phi_t = velocity
  VectorField initial_velocity;    // u0 = grad g
  ScalarField initial_potential;   // g
  Mollifier kernel;                // h as built (normalized)
  Mollifier phi;                   // 1-D profile as built
  SolutionSpec provenance;
};

/// g -> u0 -> (u, phi_t) -> p. Throws BuildError annotated with the failing
/// stage; spec validation failures surface as std::invalid_argument.
NSSolution build_solution(const SolutionSpec& spec);

}  // namespace nsexact
