#pragma once

// R-associated improper affine maps. A solution R of the Riccati equation
//
//   R' + G' = c R^2 F'
//
// turns (F, G) into (F + 1/(cR), G + R). Zeros and poles of R become new ends.

#include <optional>
#include <string>
#include <vector>

#include "ias/weier.hpp"

namespace ias::ribaucour {

/// Helicoidal base data G = a e^z, F = -a e^-z (so F G = -a^2) and the
/// explicit Riccati solution
///
///   R = e^z/(2ac) (1 + b + (1-b) k e^{bz}) / (1 + k e^{bz}),  b^2 = 1 + 4 a^2 c.
struct HelicoidalClosedForm {
  double a = 1.0;
  double c = 0.0;
  CEps k{0.0, 0.0, 1};
  double b = 1.0;

  static HelicoidalClosedForm from_ac(double a, double c, CEps k);
  static HelicoidalClosedForm from_ab(double a, double b, CEps k);
  /// b = n/m in lowest terms.
  static HelicoidalClosedForm from_nm(double a, int n, int m, CEps k);

  void validate() const;
};

holo::Expr closed_form_expr(const HelicoidalClosedForm& p);

/// R(z); PoleError where 1 + k e^{bz} vanishes.
CEps closed_form_R(const HelicoidalClosedForm& p, const CEps& z);

/// |R' + G' - c R^2 F'| at z with R' from the exact derivative of the closed form.
double closed_form_residual(const HelicoidalClosedForm& p, const CEps& z);

/// Base data on the given domain.
weier::WeierstrassData helicoidal_data(const HelicoidalClosedForm& p, const DomainSpec& domain);

/// Zeros and poles of R inside the rectangle [s0, s1] x [t0, t1], analytically.
struct Punctures {
  std::vector<CEps> zeros;
  std::vector<CEps> poles;
};
Punctures closed_form_punctures(const HelicoidalClosedForm& p, double s0, double s1, double t0, double t1);

/// Default transform domain: s in [-3, 3], t over one period 2 m pi shifted
/// by a quarter puncture spacing so that no puncture sits on the boundary.
DomainSpec default_domain(int n, int m, int n1, int n2);

/// Same strip with s shifted by less than half a step so that no grid sample
/// comes within a quarter step of a puncture of `p`.
DomainSpec default_domain(const HelicoidalClosedForm& p, int n, int m, int n1, int n2);

// ----------------------------------------------------------- numerical path

struct RiccatiParams {
  double c = 0.0;
  holo::Expr G, F;
  CEps z_init;
  CEps R_init;
  double blowup_cap = 1e8;

  void validate() const;
};

struct RiccatiSolution {
  std::vector<CEps> z;
  std::vector<CEps> R;
};

/// Classical RK4 for dR/dz = c R^2 F'(z) - G'(z) along a polyline, with
/// `steps` equal steps per leg. BlowUpError once |R| exceeds the cap.
RiccatiSolution riccati_integrate(const RiccatiParams& p, const std::vector<CEps>& path, int steps);

/// R at every sample of a rectangle grid: along the base row from z_init,
/// then along each column, `substeps` RK4 steps per grid edge.
std::vector<CEps> riccati_grid(const RiccatiParams& p, const DomainSpec& domain, int substeps = 8);

// ---------------------------------------------------------------- transform

/// (F + 1/(cR), G + R). R must solve the Riccati equation for the data:
/// the relative residual is checked at the domain samples and RiccatiViolation
/// is thrown above `riccati_tol`. Samples where R vanishes or has a pole are
/// skipped by the check; the caller registers them as punctures.
weier::WeierstrassData transform_data(const weier::WeierstrassData& data, const holo::Expr& R, double c,
                                      const std::vector<CEps>& punctures = {}, double riccati_tol = 1e-9);

/// Helicoidal base and transformed data on one domain, punctures registered.
struct HelicoidalPair {
  HelicoidalClosedForm params;
  weier::WeierstrassData base;
  weier::WeierstrassData transformed;
  Punctures punctures;
};
HelicoidalPair helicoidal_transform(const HelicoidalClosedForm& p, const DomainSpec& domain);

/// Scalar with the sign of -h on the transformed map:
/// log|G'| - log(c^2 |R|^4 |F'|).
double nodal_function(const weier::WeierstrassData& base, const holo::Expr& R, double c, const CEps& z);

struct ProductIdentity {
  double max_residual = 0.0;  // |dG~ dF~ - dG dF| / (|dG dF| + 1)
  int samples = 0;
};
ProductIdentity product_identity(const weier::WeierstrassData& base, const weier::WeierstrassData& transformed);

/// g from the planar parts of (psi~ - psi) and (N - N~), each component.
struct GFunction {
  double max_imag = 0.0;          // both C_eps quotients, largest |Im|
  double max_component_gap = 0.0; // |g_x - g_y|
  double max_formula_gap = 0.0;   // |g - (t + 1)/(t - 1)|, t = c |R|^2
  int samples = 0;
};
GFunction g_function(const SurfaceMesh& base, const SurfaceMesh& transformed, const holo::Expr& R, double c);

struct TransformDiagnostics {
  Punctures punctures;           // analytic, inside the domain
  int zeros_counted = 0;         // argument principle on the strip boundary
  int poles_counted = 0;
  int expected_ends = -1;        // 2n when b = n/m
  double nodal_hausdorff = 0.0;  // parameter space
  double nodal_tolerance = 0.0;  // 2 grid steps
  int nodal_curves = 0;
  int singular_curves = 0;
  std::optional<std::array<double, 3>> translation;  // mean over samples
  double translation_std = 0.0;
  ProductIdentity product;
  GFunction g;
  std::vector<std::string> notices;
};

/// Diagnostics for a transform of helicoidal data. `nm` gives b = n/m; when
/// absent, b is matched against n/m with m <= 64, and periodicity is
/// skipped with a notice if no match is found.
TransformDiagnostics analyze_transform(const SurfaceMesh& base, const SurfaceMesh& transformed,
                                       const HelicoidalClosedForm& p,
                                       std::optional<std::pair<int, int>> nm = std::nullopt);

}  // namespace ias::ribaucour
