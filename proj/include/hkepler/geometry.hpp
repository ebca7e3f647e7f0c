// hkepler - Heisenberg group structure and phase-space coordinate changes
#pragma once

#include "hkepler/types.hpp"

namespace hkepler::geometry {

/// Group law (x, y, z).(x', y', z') = (x+x', y+y', z+z' + (xy' - x'y)/2).
CartPoint group_mul(const CartPoint& p, const CartPoint& q);

/// Inverse element; the cross term is antisymmetric so this is plain negation.
CartPoint group_inverse(const CartPoint& p);

/// Anisotropic dilation (lambda x, lambda y, lambda^2 z). Throws
/// invalid_argument for lambda <= 0.
CartPoint dilate(double lambda, const CartPoint& p);

/// Cartesian to cylindrical phase point. theta is the principal value in
/// (-pi, pi]; p_R = p_X cos + p_Y sin, p_S = r (p_Y cos - p_X sin).
/// Throws axis_singularity when (x, y) is within kAxisThreshold of the axis.
CylState to_cylindrical(const CartState& s);

/// Inverse of to_cylindrical. Accepts unwrapped theta.
CartState from_cylindrical(const CylState& s);

/// Position-only conversion, valid on the axis as well.
CartPoint to_cartesian(const CylPoint& p);

}  // namespace hkepler::geometry
