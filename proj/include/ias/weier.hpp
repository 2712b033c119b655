#pragma once

// Weierstrass representation of improper affine maps. For holomorphic
// (split-holomorphic) data (G, F) on a domain in C_eps:
//
//   psi = ( G + conj(F),  |G|^2/2 - |F|^2/2 + Re(G F) - 2 Re int F dG )
//   N   = ( conj(F) - G, 1 )
//   h   = |dG|^2 - |dF|^2
//
// Points of C_eps are read as (x, y) = (s, t) for psi. The conormal's second
// component is eps * Im(conj(F) - G): with that reading <N, dpsi> = 0 holds
// for both signs of eps (for eps = +1 it is the plain identification).

#include <optional>
#include <string>
#include <vector>

#include "ias/holo.hpp"
#include "ias/mesh.hpp"

namespace ias::weier {

struct WeierstrassData {
  WeierstrassData(holo::Expr g, holo::Expr f, DomainSpec dom, std::string label = {});

  holo::Expr G, F;
  int eps = 1;
  DomainSpec domain;
  std::vector<CEps> punctures;
  std::string name;
  /// Constant added to every height (fixes the integration constant).
  double height_offset = 0.0;

  // Exact derivatives, built once.
  holo::Expr dG, dF, d2G, d2F;
};

struct SurfaceOptions {
  /// Relative flag threshold: singular iff |h_deg| <= tol * (|G'|^2 + |F'|^2).
  double singular_threshold = 1e-12;
  /// Ring loop integrals must agree with each other to this relative tolerance.
  double period_tolerance = 1e-8;
};

/// Pointwise values of the representation at z, given int_{z_base}^{z} F dG.
struct PointValues {
  CEps G, F, dG, dF;
  Vec3 psi;
  Vec3 N;
  double lambda;  // |G'|^2 - |F'|^2
  double scale;   // euclid(G')^2 + euclid(F')^2
};
PointValues evaluate_point(const WeierstrassData& data, const CEps& z, const CEps& integral_FdG);

/// int F dG along a polyline (composite adaptive Gauss-Legendre per leg).
CEps integrate_FdG(const WeierstrassData& data, const std::vector<CEps>& path);

/// Height jump per counter-clockwise turn around the puncture at 0:
/// 2 Re of the loop integral of -F dG. nullopt for simply connected domains.
std::optional<double> detect_period(const WeierstrassData& data);

SurfaceMesh eval_surface(const WeierstrassData& data, const SurfaceOptions& opts = {});

/// Surface point at an arbitrary z, integrating from the nearest mesh sample.
Vec3 point_on_surface(const SurfaceMesh& mesh, const CEps& z);

/// |G'|^2 - |F'|^2 and its gradient in grid parameters at (p1, p2).
struct DegeneracyJet {
  double value;
  double d1, d2;
  double scale;
};
DegeneracyJet degeneracy_jet(const WeierstrassData& data, double p1, double p2);

// ------------------------------------------------------------ singular set

struct CurvePoint {
  double p1 = 0.0, p2 = 0.0;
  CEps z;
  double value = 0.0;  // field value after refinement
};

struct SingularCurve {
  std::vector<CurvePoint> points;
  bool closed = false;
};

/// Zero level set of a scalar field sampled on the mesh grid, by marching
/// squares with linear interpolation along cell edges. Annulus grids join
/// across the theta seam.
std::vector<SingularCurve> contour_zero(const DomainSpec& domain, int eps,
                                        const std::vector<double>& field);

/// Singular curves: zero set of h_degeneracy, refined by Newton steps on
/// the exact degeneracy when the mesh carries its generating data.
std::vector<SingularCurve> extract_singular_curves(const SurfaceMesh& mesh);

/// Symmetric Hausdorff distance in parameter space between two curve sets.
double hausdorff(const std::vector<SingularCurve>& a, const std::vector<SingularCurve>& b);

}  // namespace ias::weier
