#pragma once

#include "isoflow/solvable_model.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// Adjoint of ad(x) w.r.t. the left-invariant metric. The adapted basis is
/// orthonormal, so this is the transpose of ad(x).
Mat ad_star(const SolvableModel& model, const Vec& x);

/// ad(x)* from the root-space case table. `x` must lie in 𝔞 or in a single
/// g_λ; anything else raises UnsupportedArgument.
Mat ad_star_table(const SolvableModel& model, const Vec& x);

/// ∇_x y = ½([x,y] − ad(x)*y − ad(y)*x) for left-invariant fields.
Vec levi_civita(const SolvableModel& model, const Vec& x, const Vec& y);

/// ∇_x y from the closed-form connection table, extended bilinearly over the
/// root-space components of x and y. Never calls the metric adjoint.
Vec levi_civita_table(const SolvableModel& model, const Vec& x, const Vec& y);

/// R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_{[x,y]} z.
Vec curvature(const SolvableModel& model, const Vec& x, const Vec& y, const Vec& z);
/// Same tensor built from levi_civita_table.
Vec curvature_table(const SolvableModel& model, const Vec& x, const Vec& y, const Vec& z);

/// Index of the root space containing x, -1 for 𝔞, or nullopt when x has
/// components in more than one summand.
std::optional<int> homogeneous_root(const SolvableModel& model, const Vec& x);

}  // namespace isoflow
