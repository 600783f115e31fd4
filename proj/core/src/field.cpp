#include "nsexact/field.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <utility>

namespace nsexact {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

std::string PartialIndex::str() const {
  std::ostringstream os;
  os << "(" << dx << "," << dy << "," << dz << ";t^" << dt << ")";
  return os.str();
}

void FDSpec::validate() const {
  if (!(space_step > 0.0) || !(time_step > 0.0))
    throw std::invalid_argument("FDSpec: steps must be positive");
  if (stencil_order != 2 && stencil_order != 4)
    throw std::invalid_argument("FDSpec: stencil order must be 2 or 4");
}

void ScalarFieldImpl::evaluate_many(const Vec3& x, double t, std::span<const PartialIndex> ds,
                                    std::span<double> out) const {
  for (std::size_t i = 0; i < ds.size(); ++i) out[i] = evaluate(x, t, ds[i]);
}

namespace {

using Taps = std::vector<std::pair<int, double>>;

// Centered stencil taps for derivative k in {0,1,2} at accuracy order p in {2,4}.
// Coefficients are divided by h^k at application time.
Taps stencil_taps(int k, int p) {
  switch (k) {
    case 0:
      return {{0, 1.0}};
    case 1:
      if (p == 2) return {{-1, -0.5}, {1, 0.5}};
      return {{-2, 1.0 / 12.0}, {-1, -8.0 / 12.0}, {1, 8.0 / 12.0}, {2, -1.0 / 12.0}};
    case 2:
      if (p == 2) return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
      return {{-2, -1.0 / 12.0},
              {-1, 16.0 / 12.0},
              {0, -30.0 / 12.0},
              {1, 16.0 / 12.0},
              {2, -1.0 / 12.0}};
    default:
      throw CapabilityError("finite differences support per-axis order <= 2, got " +
                            std::to_string(k));
  }
}

double fd_apply(const std::function<double(const Vec3&, double)>& f, const Vec3& x, double t,
                const PartialIndex& d, const FDSpec& fd) {
  fd.validate();
  if (d.spatial_order() > 2 || d.dt > 1)
    throw CapabilityError("finite-difference derivatives cover spatial order <= 2, dt <= 1; "
                          "requested " + d.str());
  const std::array<int, 4> orders = {d.dx, d.dy, d.dz, d.dt};
  std::array<Taps, 4> taps;
  std::array<double, 4> steps;
  for (int a = 0; a < 4; ++a) {
    taps[a] = stencil_taps(orders[a], fd.stencil_order);
    const double base = (a < 3) ? std::abs(x[a]) : std::abs(t);
    const double h = (a < 3) ? fd.space_step : fd.time_step;
    steps[a] = h * (1.0 + base);
  }
  double scale = 1.0;
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < orders[a]; ++k) scale /= steps[a];

  double acc = 0.0;
  for (const auto& [ox, cx] : taps[0])
    for (const auto& [oy, cy] : taps[1])
      for (const auto& [oz, cz] : taps[2])
        for (const auto& [ot, ct] : taps[3]) {
          const Vec3 p{x.x + ox * steps[0], x.y + oy * steps[1], x.z + oz * steps[2]};
          acc += cx * cy * cz * ct * f(p, t + ot * steps[3]);
        }
  return acc * scale;
}

class ConstantField final : public ScalarFieldImpl {
 public:
  explicit ConstantField(double c) : c_(c) {}
  double evaluate(const Vec3&, double, const PartialIndex& d) const override {
    return d.is_value() ? c_ : 0.0;
  }
  bool supports(const PartialIndex&) const override { return true; }

 private:
  double c_;
};

double falling_power(double base, int power, int deriv) {
  // d^deriv/ds^deriv s^power evaluated at base
  if (deriv > power) return 0.0;
  double c = 1.0;
  for (int k = 0; k < deriv; ++k) c *= static_cast<double>(power - k);
  double v = 1.0;
  for (int k = 0; k < power - deriv; ++k) v *= base;
  return c * v;
}

class PolynomialField final : public ScalarFieldImpl {
 public:
  explicit PolynomialField(std::vector<PolyTerm> terms) : terms_(std::move(terms)) {}
  double evaluate(const Vec3& x, double, const PartialIndex& d) const override {
    if (d.dt > 0) return 0.0;
    double s = 0.0;
    for (const auto& term : terms_)
      s += term.coef * falling_power(x.x, term.px, d.dx) * falling_power(x.y, term.py, d.dy) *
           falling_power(x.z, term.pz, d.dz);
    return s;
  }
  bool supports(const PartialIndex&) const override { return true; }

 private:
  std::vector<PolyTerm> terms_;
};

class AnalyticField final : public ScalarFieldImpl {
 public:
  AnalyticField(std::function<double(const Vec3&, double, const PartialIndex&)> f, int max_spatial,
                int max_time)
      : f_(std::move(f)), max_spatial_(max_spatial), max_time_(max_time) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    return f_(x, t, d);
  }
  bool supports(const PartialIndex& d) const override {
    return d.spatial_order() <= max_spatial_ && d.dt <= max_time_;
  }

 private:
  std::function<double(const Vec3&, double, const PartialIndex&)> f_;
  int max_spatial_;
  int max_time_;
};

class FDField final : public ScalarFieldImpl {
 public:
  FDField(std::function<double(const Vec3&, double)> f, FDSpec fd) : f_(std::move(f)), fd_(fd) {
    fd_.validate();
  }
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    if (d.is_value()) return f_(x, t);
    return fd_apply(f_, x, t, d, fd_);
  }
  bool supports(const PartialIndex& d) const override {
    return d.spatial_order() <= 2 && d.dt <= 1;
  }
  DerivativeMode mode() const override { return DerivativeMode::FiniteDifference; }

 private:
  std::function<double(const Vec3&, double)> f_;
  FDSpec fd_;
};

class SumField final : public ScalarFieldImpl {
 public:
  SumField(ScalarField a, ScalarField b, double sb) : a_(std::move(a)), b_(std::move(b)), sb_(sb) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    return a_.impl()->evaluate(x, t, d) + sb_ * b_.impl()->evaluate(x, t, d);
  }
  bool supports(const PartialIndex& d) const override {
    return a_.supports(d) && b_.supports(d);
  }
  DerivativeMode mode() const override {
    return (a_.mode() == DerivativeMode::FiniteDifference ||
            b_.mode() == DerivativeMode::FiniteDifference)
               ? DerivativeMode::FiniteDifference
               : DerivativeMode::Analytic;
  }

 private:
  ScalarField a_, b_;
  double sb_;
};

class ScaledField final : public ScalarFieldImpl {
 public:
  ScaledField(ScalarField a, double s) : a_(std::move(a)), s_(s) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    return s_ * a_.impl()->evaluate(x, t, d);
  }
  bool supports(const PartialIndex& d) const override { return a_.supports(d); }
  DerivativeMode mode() const override { return a_.mode(); }

 private:
  ScalarField a_;
  double s_;
};

class DerivedField final : public ScalarFieldImpl {
 public:
  DerivedField(ScalarField base, PartialIndex offset) : base_(std::move(base)), offset_(offset) {}
  double evaluate(const Vec3& x, double t, const PartialIndex& d) const override {
    return base_.impl()->evaluate(x, t, combine(d));
  }
  bool supports(const PartialIndex& d) const override { return base_.supports(combine(d)); }
  DerivativeMode mode() const override { return base_.mode(); }

 private:
  PartialIndex combine(const PartialIndex& d) const {
    return {d.dx + offset_.dx, d.dy + offset_.dy, d.dz + offset_.dz, d.dt + offset_.dt};
  }
  ScalarField base_;
  PartialIndex offset_;
};

void check_request(const Vec3& x, double t, const PartialIndex& d) {
  if (d.dx < 0 || d.dy < 0 || d.dz < 0 || d.dt < 0)
    throw std::invalid_argument("negative derivative order " + d.str());
  if (!x.finite() || !std::isfinite(t)) {
    std::ostringstream os;
    os << "field evaluation requested at non-finite point " << x << ", t=" << t;
    throw EvaluationError(os.str());
  }
}

void check_result(double v, const Vec3& x, double t, const PartialIndex& d) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "field produced non-finite value for partial " << d.str() << " at " << x
       << ", t=" << t;
    throw EvaluationError(os.str());
  }
}

}  // namespace

ScalarField::ScalarField() : impl_(std::make_shared<ConstantField>(0.0)) {}

ScalarField::ScalarField(std::shared_ptr<const ScalarFieldImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("ScalarField: null implementation");
}

double ScalarField::operator()(const Vec3& x, double t) const {
  return partial(x, t, PartialIndex::value());
}

double ScalarField::partial(const Vec3& x, double t, const PartialIndex& d) const {
  check_request(x, t, d);
  if (!impl_->supports(d))
    throw CapabilityError("field does not provide partial " + d.str());
  const double v = impl_->evaluate(x, t, d);
  check_result(v, x, t, d);
  return v;
}

void ScalarField::partials(const Vec3& x, double t, std::span<const PartialIndex> ds,
                           std::span<double> out) const {
  if (ds.size() != out.size()) throw std::invalid_argument("partials: size mismatch");
  for (const auto& d : ds) {
    check_request(x, t, d);
    if (!impl_->supports(d))
      throw CapabilityError("field does not provide partial " + d.str());
  }
  impl_->evaluate_many(x, t, ds, out);
  for (std::size_t i = 0; i < ds.size(); ++i) check_result(out[i], x, t, ds[i]);
}

bool ScalarField::supports(const PartialIndex& d) const { return impl_->supports(d); }

DerivativeMode ScalarField::mode() const { return impl_->mode(); }

ScalarField ScalarField::constant(double c) {
  return ScalarField(std::make_shared<ConstantField>(c));
}

ScalarField ScalarField::polynomial(std::vector<PolyTerm> terms) {
  return ScalarField(std::make_shared<PolynomialField>(std::move(terms)));
}

ScalarField ScalarField::from_function(std::function<double(const Vec3&, double)> f, FDSpec fd) {
  return ScalarField(std::make_shared<FDField>(std::move(f), fd));
}

ScalarField ScalarField::analytic(
    std::function<double(const Vec3&, double, const PartialIndex&)> f, int max_spatial_order,
    int max_time_order) {
  return ScalarField(std::make_shared<AnalyticField>(std::move(f), max_spatial_order,
                                                     max_time_order));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(std::make_shared<SumField>(a, b, 1.0));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField(std::make_shared<SumField>(a, b, -1.0));
}

ScalarField operator*(double s, const ScalarField& f) {
  return ScalarField(std::make_shared<ScaledField>(f, s));
}

VectorField::VectorField() = default;

VectorField::VectorField(ScalarField c0, ScalarField c1, ScalarField c2)
    : comp_{std::move(c0), std::move(c1), std::move(c2)} {}

Vec3 VectorField::operator()(const Vec3& x, double t) const {
  return {comp_[0](x, t), comp_[1](x, t), comp_[2](x, t)};
}

Vec3 VectorField::partial(const Vec3& x, double t, const PartialIndex& d) const {
  return {comp_[0].partial(x, t, d), comp_[1].partial(x, t, d), comp_[2].partial(x, t, d)};
}

bool VectorField::supports(const PartialIndex& d) const {
  return comp_[0].supports(d) && comp_[1].supports(d) && comp_[2].supports(d);
}

DerivativeMode VectorField::mode() const {
  for (int i = 0; i < 3; ++i)
    if (comp_[i].mode() == DerivativeMode::FiniteDifference)
      return DerivativeMode::FiniteDifference;
  return DerivativeMode::Analytic;
}

VectorField VectorField::constant(const Vec3& v) {
  return VectorField(ScalarField::constant(v.x), ScalarField::constant(v.y),
                     ScalarField::constant(v.z));
}

double fd_partial(const ScalarField& f, const Vec3& x, double t, const PartialIndex& d,
                  const FDSpec& fd) {
  check_request(x, t, d);
  const double v = fd_apply([&f](const Vec3& p, double s) { return f(p, s); }, x, t, d, fd);
  check_result(v, x, t, d);
  return v;
}

namespace detail {
ScalarField derived_field(const ScalarField& base, const PartialIndex& offset) {
  return ScalarField(std::make_shared<DerivedField>(base, offset));
}
}  // namespace detail

}  // namespace nsexact
