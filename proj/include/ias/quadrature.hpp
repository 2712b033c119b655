#pragma once

#include <functional>

#include "ias/cnum.hpp"

namespace ias::quad {

using Integrand = std::function<CEps(const CEps&)>;

/// Integral of f(z) dz along the straight segment a -> b by adaptive
/// composite Gauss-Legendre (10 nodes, bisection on disagreement).
/// Evaluation failures become PathSingularity; failure to converge within
/// the depth limit becomes QuadratureError.
CEps segment(const Integrand& f, const CEps& a, const CEps& b, double rel_tol = 1e-14);

/// Integral of f(z) dz once around the circle |z - center| = radius
/// (counter-clockwise, eps = +1) by the periodic trapezoid rule, doubled
/// until successive estimates agree.
CEps circle(const Integrand& f, const CEps& center, double radius, double rel_tol = 1e-13);

}  // namespace ias::quad
