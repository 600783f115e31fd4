#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "nsexact/field.hpp"
#include "nsexact/vec3.hpp"

namespace nsexact::test {

// Test-side polynomial machinery, independent of ScalarField::polynomial's
// derivative path: terms are differentiated symbolically here and evaluated
// by plain Horner-free accumulation.
struct OracleTerm {
  double coef;
  std::array<int, 3> p;
};

using OraclePoly = std::vector<OracleTerm>;

inline double oracle_eval(const OraclePoly& poly, const Vec3& x) {
  double s = 0.0;
  for (const auto& t : poly) {
    double v = t.coef;
    for (int k = 0; k < t.p[0]; ++k) v *= x.x;
    for (int k = 0; k < t.p[1]; ++k) v *= x.y;
    for (int k = 0; k < t.p[2]; ++k) v *= x.z;
    s += v;
  }
  return s;
}

inline OraclePoly oracle_diff(const OraclePoly& poly, int axis) {
  OraclePoly out;
  for (const auto& t : poly) {
    if (t.p[axis] == 0) continue;
    OracleTerm d = t;
    d.coef *= t.p[axis];
    d.p[axis] -= 1;
    out.push_back(d);
  }
  return out;
}

// Uniform [-1,1] from raw engine words so sequences are identical across
// platforms.
inline double unit_symmetric(std::mt19937& rng) {
  return 2.0 * (rng() * (1.0 / 4294967296.0)) - 1.0;
}

// All monomials of total degree <= 3 in three variables (20 of them).
inline std::vector<std::array<int, 3>> degree3_monomials() {
  std::vector<std::array<int, 3>> exps;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j + i <= 3; ++j)
      for (int k = 0; k + i + j <= 3; ++k) exps.push_back({i, j, k});
  return exps;
}

inline OraclePoly random_poly(std::mt19937& rng) {
  OraclePoly poly;
  for (const auto& e : degree3_monomials()) poly.push_back({unit_symmetric(rng), e});
  return poly;
}

inline ScalarField to_field(const OraclePoly& poly) {
  std::vector<PolyTerm> terms;
  terms.reserve(poly.size());
  for (const auto& t : poly) terms.push_back({t.coef, t.p[0], t.p[1], t.p[2]});
  return ScalarField::polynomial(std::move(terms));
}

struct OracleVectorField {
  OraclePoly comp[3];

  VectorField to_vector_field() const {
    return VectorField(to_field(comp[0]), to_field(comp[1]), to_field(comp[2]));
  }
};

inline OracleVectorField random_vector_poly(std::mt19937& rng) {
  return OracleVectorField{{random_poly(rng), random_poly(rng), random_poly(rng)}};
}

}  // namespace nsexact::test
