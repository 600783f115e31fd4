#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsexact/vec3.hpp"

namespace nsexact {

/// Requested derivative order is not available on a field.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A field evaluation produced (or was handed) a non-finite number.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DerivativeMode { Analytic, FiniteDifference };

/// Partial-derivative request: spatial multi-index (dx,dy,dz) plus time order dt.
/// The library contract is total spatial order <= 2 and dt <= 1; individual
/// fields may support more and advertise it through supports().
struct PartialIndex {
  int dx = 0;
  int dy = 0;
  int dz = 0;
  int dt = 0;

  constexpr int spatial_order() const { return dx + dy + dz; }
  constexpr bool is_value() const { return dx == 0 && dy == 0 && dz == 0 && dt == 0; }
  constexpr int spatial(int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }

  static constexpr PartialIndex value() { return {}; }
  static constexpr PartialIndex space(int axis, int order = 1) {
    PartialIndex d;
    (axis == 0 ? d.dx : (axis == 1 ? d.dy : d.dz)) = order;
    return d;
  }
  static constexpr PartialIndex time(int order = 1) { return {0, 0, 0, order}; }

  constexpr PartialIndex plus_space(int axis, int extra = 1) const {
    PartialIndex d = *this;
    (axis == 0 ? d.dx : (axis == 1 ? d.dy : d.dz)) += extra;
    return d;
  }
  constexpr PartialIndex plus_time(int extra = 1) const {
    PartialIndex d = *this;
    d.dt += extra;
    return d;
  }

  constexpr bool operator==(const PartialIndex&) const = default;
  std::string str() const;
};

/// Centered finite-difference settings. The effective step is scaled by
/// (1 + |coordinate|) per axis so that truncation and round-off stay balanced
/// away from the origin.
struct FDSpec {
  double space_step = 1e-3;
  double time_step = 1e-3;
  int stencil_order = 4;  // 2 or 4

  void validate() const;
};

class ScalarFieldImpl {
 public:
  virtual ~ScalarFieldImpl() = default;
  virtual double evaluate(const Vec3& x, double t, const PartialIndex& d) const = 0;
  virtual bool supports(const PartialIndex& d) const = 0;
  virtual DerivativeMode mode() const { return DerivativeMode::Analytic; }
  /// Batched evaluation at one point; overridden where one sweep can serve
  /// many derivative requests (quadrature-backed fields).
  virtual void evaluate_many(const Vec3& x, double t, std::span<const PartialIndex> ds,
                             std::span<double> out) const;
};

struct PolyTerm {
  double coef = 0.0;
  int px = 0;
  int py = 0;
  int pz = 0;
};

/// Immutable space-time scalar field with partial-derivative access.
/// Copies are cheap handles; evaluation is pure and thread-safe.
class ScalarField {
 public:
  ScalarField();  // zero field
  explicit ScalarField(std::shared_ptr<const ScalarFieldImpl> impl);

  double operator()(const Vec3& x, double t = 0.0) const;
  double partial(const Vec3& x, double t, const PartialIndex& d) const;
  /// All requests evaluated at one (x,t); quadrature-backed fields serve the
  /// whole batch from a single sweep.
  void partials(const Vec3& x, double t, std::span<const PartialIndex> ds,
                std::span<double> out) const;
  bool supports(const PartialIndex& d) const;
  DerivativeMode mode() const;
  const std::shared_ptr<const ScalarFieldImpl>& impl() const { return impl_; }

  static ScalarField constant(double c);
  static ScalarField polynomial(std::vector<PolyTerm> terms);
  /// Wraps a value-only callable; derivatives come from centered differences.
  static ScalarField from_function(std::function<double(const Vec3&, double)> f, FDSpec fd = {});
  /// Wraps a callable that serves every partial up to the stated caps.
  static ScalarField analytic(std::function<double(const Vec3&, double, const PartialIndex&)> f,
                              int max_spatial_order, int max_time_order);

 private:
  std::shared_ptr<const ScalarFieldImpl> impl_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& f);

/// Three scalar components (u1,u2,u3).
class VectorField {
 public:
  VectorField();  // zero field
  VectorField(ScalarField c0, ScalarField c1, ScalarField c2);

  const ScalarField& component(int i) const { return comp_[i]; }
  Vec3 operator()(const Vec3& x, double t = 0.0) const;
  Vec3 partial(const Vec3& x, double t, const PartialIndex& d) const;
  bool supports(const PartialIndex& d) const;
  DerivativeMode mode() const;

  static VectorField constant(const Vec3& v);

 private:
  ScalarField comp_[3];
};

/// Centered-difference partial of a field using only its values. Used both by
/// finite-difference-mode fields and as an independent cross-check against
/// analytic derivatives.
double fd_partial(const ScalarField& f, const Vec3& x, double t, const PartialIndex& d,
                  const FDSpec& fd);

namespace detail {
/// Derivative of a field handle with a fixed index offset (e.g. gradient
/// components). Capability is delegated to the base field at d + offset.
ScalarField derived_field(const ScalarField& base, const PartialIndex& offset);
}  // namespace detail

}  // namespace nsexact
