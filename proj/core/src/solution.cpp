#include "nsexact/solution.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace nsexact {

double PsiSpec::value(double s, int order) const {
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  return a * std::exp(s) + sign * b * std::exp(-s);
}

void SolutionSpec::validate() const {
  auto nonzero_finite = [](double v) { return v != 0.0 && std::isfinite(v); };
  if (!nonzero_finite(alpha) || !nonzero_finite(beta) || !nonzero_finite(zeta))
    throw std::invalid_argument("alpha, beta, zeta must be nonzero finite reals");
  const double gap = std::abs(zeta * zeta - alpha * alpha - beta * beta);
  if (gap > 1e-12 * zeta * zeta) {
    std::ostringstream os;
    os << "wave-vector constraint zeta^2 = alpha^2 + beta^2 violated: |" << zeta * zeta << " - "
       << alpha * alpha + beta * beta << "| = " << gap;
    throw std::invalid_argument(os.str());
  }
  if (!(viscosity >= 0.0) || !std::isfinite(viscosity))
    throw std::invalid_argument("viscosity must be a nonnegative finite real");
  if (phi.kind != MollifierKind::EvenBump1D)
    throw std::invalid_argument("phi must be the even 1-D profile (even-bump-1d)");
  phi.validate();
  if (kernel.kind == MollifierKind::EvenBump1D)
    throw std::invalid_argument("kernel must be a 3-D weight");
  kernel.validate();
  if (potential_nodes < 2 || convolution_nodes < 2 || normalization_nodes < 2)
    throw std::invalid_argument("quadrature node counts must be >= 2");
  for (int i = 0; i < 3; ++i)
    if (!forcing_potential.supports(PartialIndex::space(i)))
      throw std::invalid_argument("forcing potential must expose first derivatives");
}

BuildError::BuildError(std::string stage, const std::string& what)
    : std::runtime_error("build_solution stage '" + stage + "': " + what),
      stage_(std::move(stage)) {}

namespace {

// d^k/dtheta^k cos(theta) as a phase rotation.
double cos_shift(double c, double s, int k) {
  switch (k & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

double int_pow(double base, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= base;
  return v;
}

}  // namespace

SeparablePotential::SeparablePotential(double alpha, double beta, double zeta, PsiSpec psi,
                                       Mollifier phi, int nodes)
    : alpha_(alpha), beta_(beta), zeta_(zeta), psi_(psi), phi_(std::move(phi)), nodes_(nodes) {
  if (phi_.spec().kind != MollifierKind::EvenBump1D)
    throw std::invalid_argument("SeparablePotential: phi must be the even 1-D profile");
  if (nodes_ < 2) throw std::invalid_argument("SeparablePotential: nodes must be >= 2");
  const double rho = phi_.spec().radius;
  const auto& rule = gauss_legendre(nodes_);
  for (int j = 0; j < nodes_; ++j) {
    const double s = 0.5 * rho * (rule.nodes[j] + 1.0);
    const double w = 0.5 * rho * rule.weights[j];
    const double ep = std::exp(zeta_ * s), em = std::exp(-zeta_ * s);
    c0_ += w * phi_.value_1d(s) * (ep + em);
    d1_ += w * phi_.value_1d(s, 1) * (em - ep);
  }
}

double SeparablePotential::inner(double z, int order) const {
  if (order < 0 || order > 3)
    throw CapabilityError("inner integral derivatives available to order 3");
  const double ep = std::exp(zeta_ * z), em = std::exp(-zeta_ * z);
  switch (order) {
    case 0: return c0_ * (psi_.a * ep + psi_.b * em);
    case 1: return d1_ * (psi_.a * ep - psi_.b * em);
    case 2: return zeta_ * d1_ * (psi_.a * ep + psi_.b * em);
    default: return zeta_ * zeta_ * d1_ * (psi_.a * ep - psi_.b * em);
  }
}

bool SeparablePotential::supports(const PartialIndex& d) const { return d.dz <= 3; }

double SeparablePotential::evaluate(const Vec3& x, double, const PartialIndex& d) const {
  if (d.dt > 0) return 0.0;
  const double theta = alpha_ * x.x + beta_ * x.y;
  const double factor = int_pow(alpha_, d.dx) * int_pow(beta_, d.dy);
  return factor * cos_shift(std::cos(theta), std::sin(theta), d.dx + d.dy) * inner(x.z, d.dz);
}

void SeparablePotential::evaluate_many(const Vec3& x, double t, std::span<const PartialIndex> ds,
                                       std::span<double> out) const {
  (void)t;
  const double theta = alpha_ * x.x + beta_ * x.y;
  const double c = std::cos(theta), s = std::sin(theta);
  const double ep = std::exp(zeta_ * x.z), em = std::exp(-zeta_ * x.z);
  const double even = psi_.a * ep + psi_.b * em;
  const double odd = psi_.a * ep - psi_.b * em;
  const double inner_k[4] = {c0_ * even, d1_ * odd, zeta_ * d1_ * even,
                             zeta_ * zeta_ * d1_ * odd};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& d = ds[i];
    if (d.dt > 0) {
      out[i] = 0.0;
      continue;
    }
    out[i] = int_pow(alpha_, d.dx) * int_pow(beta_, d.dy) * cos_shift(c, s, d.dx + d.dy) *
             inner_k[d.dz];
  }
}

ScalarField make_separable_potential(double alpha, double beta, double zeta, const PsiSpec& psi,
                                     const Mollifier& phi, int nodes) {
  return ScalarField(std::make_shared<SeparablePotential>(alpha, beta, zeta, psi, phi, nodes));
}

ScalarField make_harmonic_potential(double alpha, double beta, double zeta, const PsiSpec& psi,
                                    const Mollifier& phi, int nodes) {
  auto nonzero_finite = [](double v) { return v != 0.0 && std::isfinite(v); };
  if (!nonzero_finite(alpha) || !nonzero_finite(beta) || !nonzero_finite(zeta))
    throw std::invalid_argument("alpha, beta, zeta must be nonzero finite reals");
  if (std::abs(zeta * zeta - alpha * alpha - beta * beta) > 1e-12 * zeta * zeta)
    throw std::invalid_argument("wave-vector constraint zeta^2 = alpha^2 + beta^2 violated");
  return make_separable_potential(alpha, beta, zeta, psi, phi, nodes);
}

VectorField make_initial_velocity(const ScalarField& g) {
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      if (!g.supports(PartialIndex::space(i).plus_space(j)))
        throw CapabilityError("make_initial_velocity: potential lacks order-2 access");
  return gradient(g);
}

std::shared_ptr<const ConvolutionTable> make_convolution_table(const Mollifier& kernel,
                                                               int nodes_per_axis) {
  if (kernel.spec().is_one_dimensional())
    throw std::invalid_argument("convolution kernel must be a 3-D weight");
  if (nodes_per_axis < 2) throw std::invalid_argument("convolution nodes must be >= 2");
  const auto& rule = gauss_legendre(nodes_per_axis);
  const Box3& box = kernel.support_box();
  const Vec3 mid = (box.lo + box.hi) * 0.5;
  const Vec3 half = (box.hi - box.lo) * 0.5;
  auto table = std::make_shared<ConvolutionTable>();
  table->nodes_per_axis = nodes_per_axis;
  const double jac = half.x * half.y * half.z;
  for (int i = 0; i < nodes_per_axis; ++i)
    for (int j = 0; j < nodes_per_axis; ++j)
      for (int k = 0; k < nodes_per_axis; ++k) {
        const Vec3 y{mid.x + half.x * rule.nodes[i], mid.y + half.y * rule.nodes[j],
                     mid.z + half.z * rule.nodes[k]};
        const double w =
            jac * rule.weights[i] * rule.weights[j] * rule.weights[k] * kernel(y);
        if (w != 0.0) {  // kernel vanishes outside its ball; skipping zeros keeps the sum identical
          table->points.push_back(y);
          table->weights.push_back(w);
        }
      }
  return table;
}

namespace {

constexpr double kTimeEpsilon = 1e-12;

class MollifiedField final : public ScalarFieldImpl {
 public:
  MollifiedField(ScalarField base, std::shared_ptr<const ConvolutionTable> table)
      : base_(std::move(base)), table_(std::move(table)) {}

  bool supports(const PartialIndex& d) const override {
    if (d.dt > 1) return false;
    const PartialIndex m{d.dx, d.dy, d.dz, 0};
    if (d.dt == 0) return base_.supports(m);
    for (int a = 0; a < 3; ++a)
      if (!base_.supports(m.plus_space(a))) return false;
    return true;
  }

  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    const PartialIndex m{d.dx, d.dy, d.dz, 0};
    if (d.dt == 0 && std::abs(t) < kTimeEpsilon)
      return base_.impl()->evaluate(x, 0.0, m);  // the integral degenerates to the base value
    double acc = 0.0;
    const auto& pts = table_->points;
    const auto& w = table_->weights;
    if (d.dt == 0) {
      for (std::size_t i = 0; i < pts.size(); ++i)
        acc += w[i] * base_.impl()->evaluate(x - t * pts[i], 0.0, m);
    } else {
      const PartialIndex mx = m.plus_space(0), my = m.plus_space(1), mz = m.plus_space(2);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3& y = pts[i];
        const Vec3 p = x - t * y;
        acc -= w[i] * (y.x * base_.impl()->evaluate(p, 0.0, mx) +
                       y.y * base_.impl()->evaluate(p, 0.0, my) +
                       y.z * base_.impl()->evaluate(p, 0.0, mz));
      }
    }
    return acc;
  }

  void evaluate_many(const Vec3& x, double t, std::span<const PartialIndex> ds,
                     std::span<double> out) const override {
    // Union of base indices needed by the batch; each request combines one or
    // three of them per quadrature point.
    std::vector<PartialIndex> base_idx;
    base_idx.reserve(ds.size() * 3);
    auto intern = [&base_idx](const PartialIndex& m) -> int {
      for (std::size_t k = 0; k < base_idx.size(); ++k)
        if (base_idx[k] == m) return static_cast<int>(k);
      base_idx.push_back(m);
      return static_cast<int>(base_idx.size() - 1);
    };
    struct Request {
      int dt = 0;
      int idx[3] = {-1, -1, -1};
      bool direct = false;
    };
    std::vector<Request> reqs(ds.size());
    const bool at_origin = std::abs(t) < kTimeEpsilon;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& d = ds[i];
      const PartialIndex m{d.dx, d.dy, d.dz, 0};
      if (d.dt == 0) {
        if (at_origin) {
          reqs[i].direct = true;
          out[i] = base_.impl()->evaluate(x, 0.0, m);
          continue;
        }
        reqs[i].idx[0] = intern(m);
      } else {
        reqs[i].dt = 1;
        for (int a = 0; a < 3; ++a) reqs[i].idx[a] = intern(m.plus_space(a));
      }
      out[i] = 0.0;
    }
    if (base_idx.empty()) return;

    std::vector<double> vals(base_idx.size());
    const auto& pts = table_->points;
    const auto& w = table_->weights;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const Vec3& y = pts[p];
      base_.impl()->evaluate_many(x - t * y, 0.0,
                                  std::span<const PartialIndex>(base_idx.data(), base_idx.size()),
                                  std::span<double>(vals.data(), vals.size()));
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& r = reqs[i];
        if (r.direct) continue;
        if (r.dt == 0)
          out[i] += w[p] * vals[r.idx[0]];
        else
          out[i] -= w[p] * (y.x * vals[r.idx[0]] + y.y * vals[r.idx[1]] + y.z * vals[r.idx[2]]);
      }
    }
  }

 private:
  ScalarField base_;
  std::shared_ptr<const ConvolutionTable> table_;
};

class BernoulliPressureField final : public ScalarFieldImpl {
 public:
  BernoulliPressureField(ScalarField potential, ScalarField forcing)
      : potential_(std::move(potential)), forcing_(std::move(forcing)) {}

  bool supports(const PartialIndex& d) const override {
    if (d.dt > 0 || d.spatial_order() > 1) return false;
    if (d.is_value()) {
      if (!potential_.supports(PartialIndex::time())) return false;
      for (int a = 0; a < 3; ++a)
        if (!potential_.supports(PartialIndex::space(a))) return false;
      return forcing_.supports(d);
    }
    const int axis = d.dx ? 0 : (d.dy ? 1 : 2);
    if (!potential_.supports(PartialIndex::space(axis).plus_time())) return false;
    for (int a = 0; a < 3; ++a)
      if (!potential_.supports(PartialIndex::space(axis).plus_space(a))) return false;
    return forcing_.supports(d);
  }

  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    if (d.is_value()) {
      const PartialIndex idx[4] = {PartialIndex::time(), PartialIndex::space(0),
                                   PartialIndex::space(1), PartialIndex::space(2)};
      double v[4];
      potential_.impl()->evaluate_many(x, t, idx, v);
      return forcing_.impl()->evaluate(x, t, d) - v[0] -
             0.5 * (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    }
    const int axis = d.dx ? 0 : (d.dy ? 1 : 2);
    const PartialIndex di = PartialIndex::space(axis);
    const PartialIndex idx[7] = {di.plus_time(),     PartialIndex::space(0),
                                 PartialIndex::space(1), PartialIndex::space(2),
                                 di.plus_space(0),   di.plus_space(1),
                                 di.plus_space(2)};
    double v[7];
    potential_.impl()->evaluate_many(x, t, idx, v);
    return forcing_.impl()->evaluate(x, t, d) - v[0] -
           (v[1] * v[4] + v[2] * v[5] + v[3] * v[6]);
  }

 private:
  ScalarField potential_;
  ScalarField forcing_;
};

}  // namespace

VectorField convolve_in_time(const VectorField& u0,
                             std::shared_ptr<const ConvolutionTable> table) {
  return VectorField(ScalarField(std::make_shared<MollifiedField>(u0.component(0), table)),
                     ScalarField(std::make_shared<MollifiedField>(u0.component(1), table)),
                     ScalarField(std::make_shared<MollifiedField>(u0.component(2), table)));
}

VectorField convolve_in_time(const VectorField& u0, const Mollifier& kernel,
                             const QuadratureSpec& quad) {
  return convolve_in_time(u0, make_convolution_table(kernel, quad.nodes));
}

ScalarField potential_of_time(const ScalarField& g,
                              std::shared_ptr<const ConvolutionTable> table) {
  return ScalarField(std::make_shared<MollifiedField>(g, std::move(table)));
}

ScalarField potential_of_time(const ScalarField& g, const Mollifier& kernel,
                              const QuadratureSpec& quad) {
  return potential_of_time(g, make_convolution_table(kernel, quad.nodes));
}

ScalarField recover_pressure(const ScalarField& potential,
                             const ScalarField& forcing_potential) {
  if (!potential.supports(PartialIndex::time()))
    throw CapabilityError("recover_pressure: potential lacks a time derivative");
  for (int a = 0; a < 3; ++a)
    if (!potential.supports(PartialIndex::space(a)))
      throw CapabilityError("recover_pressure: potential lacks first derivatives");
  return ScalarField(std::make_shared<BernoulliPressureField>(potential, forcing_potential));
}

NSSolution build_solution(const SolutionSpec& spec) {
  spec.validate();
  QuadratureSpec norm_quad;
  norm_quad.nodes = spec.normalization_nodes;

  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      throw BuildError(name, e.what());
    }
  };

  Mollifier phi = stage("normalize-phi", [&] { return make_mollifier(spec.phi, norm_quad); });
  // The kernel is normalized against the convolution rule itself: the discrete
  // kernel mass is then exactly one for that rule, so constants convolve to
  // themselves without a quadrature offset.
  QuadratureSpec kernel_quad;
  kernel_quad.nodes = spec.convolution_nodes;
  Mollifier kernel =
      stage("normalize-kernel", [&] { return make_mollifier(spec.kernel, kernel_quad); });
  ScalarField g = stage("harmonic-potential", [&] {
    return make_harmonic_potential(spec.alpha, spec.beta, spec.zeta, spec.psi, phi,
                                   spec.potential_nodes);
  });
  VectorField u0 = stage("initial-velocity", [&] { return make_initial_velocity(g); });
  auto table = stage("time-convolution",
                     [&] { return make_convolution_table(kernel, spec.convolution_nodes); });
  VectorField u = convolve_in_time(u0, table);
  ScalarField phi_t = potential_of_time(g, table);
  ScalarField p = stage("pressure-recovery",
                        [&] { return recover_pressure(phi_t, spec.forcing_potential); });

  return NSSolution{std::move(u), std::move(p),     std::move(phi_t), std::move(u0),
                    std::move(g), std::move(kernel), std::move(phi),   spec};
}

}  // namespace nsexact
