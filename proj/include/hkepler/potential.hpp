// hkepler - gauge, gravitational potential and its harmonicity certificate
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "hkepler/types.hpp"

namespace hkepler::potential {

/// Homogeneous gauge rho = ((x^2 + y^2)^2 + 16 z^2)^(1/4).
double gauge_rho(const CartPoint& p);

/// sqrt(r^4 + 16 z^2) = rho^2, the quantity most formulas actually use.
double gauge_rho_squared(double r, double z);

/// U = -k / rho^2. Throws origin_singularity when rho <= kOriginThreshold.
double potential_u(const CartPoint& p, const PotentialParams& params);

/// Cylindrical form -k / sqrt(r^4 + 16 z^2).
double potential_u(const CylPoint& p, const PotentialParams& params);

using ScalarField = std::function<double(const CartPoint&)>;

/// Default steps (c rho, c rho^2) with c = eps^(1/4) and rho the gauge of p.
/// They follow the dilations, so the stencil shape is the same at every scale.
std::pair<double, double> gauge_scaled_steps(const CartPoint& p);

/// Nested central-difference approximation of (X^2 + Y^2) u at p with
/// X = d/dx - (y/2) d/dz and Y = d/dy + (x/2) d/dz. A given h is used on
/// every coordinate; without one the gauge-scaled steps apply.
double sublaplacian(const ScalarField& u, const CartPoint& p, std::optional<double> h = std::nullopt);

/// Anisotropic variant: steps (hx, hx, hz). With steps (lambda h, lambda h,
/// lambda^2 h) the stencil commutes with dilations exactly.
double sublaplacian(const ScalarField& u, const CartPoint& p, double h_xy, double h_z);

/// Sub-Laplacian of the gravitational potential at p; should vanish away from
/// the origin. Without h the gauge-scaled steps apply. Throws
/// origin_singularity at the origin or when rho(p) <= 10 h.
double sublaplacian_residual(const CartPoint& p, const PotentialParams& params,
                             std::optional<double> h = std::nullopt);

/// Potential built from a gauge with a different weight on z^2, e.g. 1/16.
/// Used as a negative control for the harmonicity certificate.
ScalarField potential_with_z_weight(const PotentialParams& params, double z_weight);

}  // namespace hkepler::potential
