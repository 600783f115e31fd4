#include "nsexact/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nsexact {

namespace {

constexpr double kPi = std::numbers::pi;

GaussLegendreRule build_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre P_n(x) and P_n'(x) by three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step, then stop
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        dp = n * (x * q1 - q0) / (x * x - 1.0);
        x -= q1 / dp;
        break;
      }
    }
    // recompute dp at the converged node for the weight
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // ascending order
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least 1 node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<const GaussLegendreRule>(build_gauss_legendre(n))).first;
  return *it->second;
}

const SphereRule& sphere_rule_deg7() {
  static const SphereRule rule = [] {
    SphereRule r;
    const auto& gl = gauss_legendre(4);  // cos(theta) in [-1,1]
    const int n_az = 8;
    const double w_az = 2.0 * kPi / n_az;
    for (int i = 0; i < 4; ++i) {
      const double mu = gl.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int j = 0; j < n_az; ++j) {
        const double phi = (2.0 * kPi * j) / n_az;
        r.points.push_back({{s * std::cos(phi), s * std::sin(phi), mu}, gl.weights[i] * w_az});
      }
    }
    return r;
  }();
  return rule;
}

void QuadratureSpec::validate_1d() const {
  if (nodes < 2) throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi))
    throw std::invalid_argument("QuadratureSpec: interval bounds must be finite and ordered");
}

void QuadratureSpec::validate_3d() const {
  if (nodes < 2) throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
  for (int a = 0; a < 3; ++a)
    if (!(box.lo[a] < box.hi[a]) || !std::isfinite(box.lo[a]) || !std::isfinite(box.hi[a]))
      throw std::invalid_argument("QuadratureSpec: box bounds must be finite and ordered");
}

void QuadratureSpec::validate_radial() const {
  if (nodes < 2) throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
  if (!(truncation_radius > 0.0) || !std::isfinite(truncation_radius))
    throw std::invalid_argument("QuadratureSpec: truncation radius must be finite and positive");
}

double integrate_1d(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  spec.validate_1d();
  const auto& rule = gauss_legendre(spec.nodes);
  const double mid = 0.5 * (spec.interval.lo + spec.interval.hi);
  const double half = 0.5 * (spec.interval.hi - spec.interval.lo);
  double acc = 0.0;
  for (int i = 0; i < spec.nodes; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

double integrate_3d_box(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec) {
  spec.validate_3d();
  const auto& rule = gauss_legendre(spec.nodes);
  const int n = spec.nodes;
  Vec3 mid = (spec.box.lo + spec.box.hi) * 0.5;
  Vec3 half = (spec.box.hi - spec.box.lo) * 0.5;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = mid.x + half.x * rule.nodes[i];
    double acc_i = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = mid.y + half.y * rule.nodes[j];
      double acc_j = 0.0;
      for (int k = 0; k < n; ++k)
        acc_j += rule.weights[k] * f({x, y, mid.z + half.z * rule.nodes[k]});
      acc_i += rule.weights[j] * acc_j;
    }
    acc += rule.weights[i] * acc_i;
  }
  return acc * half.x * half.y * half.z;
}

double integrate_radial_exp(const ScalarField& g, const Vec3& center, double R, int nodes) {
  QuadratureSpec spec;
  spec.nodes = nodes;
  spec.truncation_radius = R;
  spec.validate_radial();

  const double amplitude = kPi * kPi;  // normalizes the total mass to one
  const auto& radial = gauss_legendre(nodes);
  const auto& sphere = sphere_rule_deg7();
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double r = 0.5 * R * (radial.nodes[i] + 1.0);
    const double wr = 0.5 * R * radial.weights[i];
    double shell = 0.0;
    for (const auto& pt : sphere.points) shell += pt.weight * g(center - r * pt.dir, 0.0);
    acc += wr * r * r * amplitude * std::exp(-2.0 * kPi * r) * shell;
  }
  return acc;
}

double radial_exp_mass(double R) {
  const double a = 2.0 * kPi * R;
  return 1.0 - std::exp(-a) * (1.0 + a + 0.5 * a * a);
}

}  // namespace nsexact
