#pragma once

#include "nsexact/field.hpp"
#include "nsexact/vec3.hpp"

namespace nsexact {

/// grad g. Requires order-1 access on g; the result exposes derivatives one
/// order below g's capability.
VectorField gradient(const ScalarField& g);

/// d1 u1 + d2 u2 + d3 u3.
ScalarField divergence(const VectorField& u);

/// Standard curl; curl(gradient(g)) vanishes identically.
VectorField curl(const VectorField& u);

ScalarField laplacian(const ScalarField& g);
VectorField laplacian(const VectorField& u);

/// (u . grad) u, componentwise sum_j u^j dj u^i. The result is value-only.
VectorField advective_term(const VectorField& u);

/// (u . grad)u - [grad(|u|^2 / 2) - u x curl u] at (x,t); zero for any smooth
/// field, up to round-off.
Vec3 lamb_identity_gap(const VectorField& u, const Vec3& x, double t);

}  // namespace nsexact
