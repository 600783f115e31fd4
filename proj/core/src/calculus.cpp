#include "nsexact/calculus.hpp"

#include <memory>

namespace nsexact {

namespace {

void require(const ScalarField& f, const PartialIndex& d, const char* op) {
  if (!f.supports(d))
    throw CapabilityError(std::string(op) + ": field lacks partial " + d.str());
}

void require(const VectorField& u, const PartialIndex& d, const char* op) {
  if (!u.supports(d))
    throw CapabilityError(std::string(op) + ": field lacks partial " + d.str());
}

class SumOfPartialsField final : public ScalarFieldImpl {
 public:
  // sum_i base_i evaluated at (d + offset_i)
  SumOfPartialsField(std::vector<ScalarField> bases, std::vector<PartialIndex> offsets)
      : bases_(std::move(bases)), offsets_(std::move(offsets)) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < bases_.size(); ++i)
      s += bases_[i].impl()->evaluate(x, t, combine(d, offsets_[i]));
    return s;
  }
  bool supports(const PartialIndex& d) const override {
    for (std::size_t i = 0; i < bases_.size(); ++i)
      if (!bases_[i].supports(combine(d, offsets_[i]))) return false;
    return true;
  }
  DerivativeMode mode() const override {
    for (const auto& b : bases_)
      if (b.mode() == DerivativeMode::FiniteDifference) return DerivativeMode::FiniteDifference;
    return DerivativeMode::Analytic;
  }

 private:
  static PartialIndex combine(const PartialIndex& d, const PartialIndex& o) {
    return {d.dx + o.dx, d.dy + o.dy, d.dz + o.dz, d.dt + o.dt};
  }
  std::vector<ScalarField> bases_;
  std::vector<PartialIndex> offsets_;
};

class DifferenceOfPartialsField final : public ScalarFieldImpl {
 public:
  DifferenceOfPartialsField(ScalarField a, PartialIndex da, ScalarField b, PartialIndex db)
      : a_(std::move(a)), da_(da), b_(std::move(b)), db_(db) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    return a_.impl()->evaluate(x, t, combine(d, da_)) - b_.impl()->evaluate(x, t, combine(d, db_));
  }
  bool supports(const PartialIndex& d) const override {
    return a_.supports(combine(d, da_)) && b_.supports(combine(d, db_));
  }
  DerivativeMode mode() const override {
    return (a_.mode() == DerivativeMode::FiniteDifference ||
            b_.mode() == DerivativeMode::FiniteDifference)
               ? DerivativeMode::FiniteDifference
               : DerivativeMode::Analytic;
  }

 private:
  static PartialIndex combine(const PartialIndex& d, const PartialIndex& o) {
    return {d.dx + o.dx, d.dy + o.dy, d.dz + o.dz, d.dt + o.dt};
  }
  ScalarField a_, b_;
  PartialIndex da_, db_;
};

// Value-only nonlinear combination: component i of (u.grad)u.
class AdvectiveComponentField final : public ScalarFieldImpl {
 public:
  AdvectiveComponentField(VectorField u, int i) : u_(std::move(u)), i_(i) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    if (!d.is_value())
      throw CapabilityError("advective term exposes values only, requested " + d.str());
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      s += u_.component(j).impl()->evaluate(x, t, PartialIndex::value()) *
           u_.component(i_).impl()->evaluate(x, t, PartialIndex::space(j));
    return s;
  }
  bool supports(const PartialIndex& d) const override { return d.is_value(); }
  DerivativeMode mode() const override { return u_.mode(); }

 private:
  VectorField u_;
  int i_;
};

}  // namespace

VectorField gradient(const ScalarField& g) {
  for (int i = 0; i < 3; ++i) require(g, PartialIndex::space(i), "gradient");
  return VectorField(detail::derived_field(g, PartialIndex::space(0)),
                     detail::derived_field(g, PartialIndex::space(1)),
                     detail::derived_field(g, PartialIndex::space(2)));
}

ScalarField divergence(const VectorField& u) {
  for (int i = 0; i < 3; ++i) require(u.component(i), PartialIndex::space(i), "divergence");
  return ScalarField(std::make_shared<SumOfPartialsField>(
      std::vector<ScalarField>{u.component(0), u.component(1), u.component(2)},
      std::vector<PartialIndex>{PartialIndex::space(0), PartialIndex::space(1),
                                PartialIndex::space(2)}));
}

VectorField curl(const VectorField& u) {
  require(u, PartialIndex::space(0), "curl");
  require(u, PartialIndex::space(1), "curl");
  require(u, PartialIndex::space(2), "curl");
  auto entry = [&u](int num, int dnum, int den, int dden) {
    return ScalarField(std::make_shared<DifferenceOfPartialsField>(
        u.component(num), PartialIndex::space(dnum), u.component(den), PartialIndex::space(dden)));
  };
  // (d2 u3 - d3 u2, d3 u1 - d1 u3, d1 u2 - d2 u1)
  return VectorField(entry(2, 1, 1, 2), entry(0, 2, 2, 0), entry(1, 0, 0, 1));
}

ScalarField laplacian(const ScalarField& g) {
  for (int i = 0; i < 3; ++i) require(g, PartialIndex::space(i, 2), "laplacian");
  return ScalarField(std::make_shared<SumOfPartialsField>(
      std::vector<ScalarField>{g, g, g},
      std::vector<PartialIndex>{PartialIndex::space(0, 2), PartialIndex::space(1, 2),
                                PartialIndex::space(2, 2)}));
}

VectorField laplacian(const VectorField& u) {
  return VectorField(laplacian(u.component(0)), laplacian(u.component(1)),
                     laplacian(u.component(2)));
}

VectorField advective_term(const VectorField& u) {
  for (int j = 0; j < 3; ++j) require(u, PartialIndex::space(j), "advective_term");
  return VectorField(ScalarField(std::make_shared<AdvectiveComponentField>(u, 0)),
                     ScalarField(std::make_shared<AdvectiveComponentField>(u, 1)),
                     ScalarField(std::make_shared<AdvectiveComponentField>(u, 2)));
}

Vec3 lamb_identity_gap(const VectorField& u, const Vec3& x, double t) {
  for (int j = 0; j < 3; ++j) require(u, PartialIndex::space(j), "lamb_identity_gap");
  const Vec3 val = u(x, t);
  Vec3 du[3];  // du[j] = partial_j u (all components)
  for (int j = 0; j < 3; ++j) du[j] = u.partial(x, t, PartialIndex::space(j));

  Vec3 advective;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += val[j] * du[j][i];
    advective[i] = s;
  }
  // grad(|u|^2/2), component i = sum_j u_j dj... careful: d_i(|u|^2/2) = sum_j u_j d_i u_j
  Vec3 grad_half_q2;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += val[j] * du[i][j];
    grad_half_q2[i] = s;
  }
  const Vec3 curl_u{du[1].z - du[2].y, du[2].x - du[0].z, du[0].y - du[1].x};
  const Vec3 rhs = grad_half_q2 - cross(val, curl_u);
  return advective - rhs;
}

}  // namespace nsexact
