#pragma once

// Mesh-only verification: nothing here looks at the generating data, so a
// mesh read back from CSV verifies exactly like the one that was written.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ias/mesh.hpp"

namespace ias::verify {

struct Check {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
  long n = 0;
  double tol = 0.0;
  bool pass = true;  // max <= tol
  long skipped = 0;
  std::string worst;  // location of the max
};

struct VerificationReport {
  std::vector<Check> checks;

  bool passed() const;
  const Check& get(const std::string& name) const;
  void append(const VerificationReport& other);

  /// Header `check,max,mean,n,tol,pass`, one row per check.
  std::string to_csv() const;
  std::string to_text() const;
};

/// Resolution-indexed default tolerance from the smaller grid dimension n:
/// 1e-3 at n >= 64, 2.5e-4 at n >= 128, 1e-4 at n >= 256, and 1e-3 (64/n)^2
/// below 64.
double resolution_tolerance(const DomainSpec& domain);

struct HessianOptions {
  int k = 12;  // neighbours besides the centre; ties at the k-th distance are kept
  std::optional<double> tol;
  /// Minimum singular-value ratio of the planar map at the sample. Near
  /// folds the (x, y) points stop forming a graph and the fit is
  /// ill-conditioned; the excluded band does not shrink with the grid.
  double min_graph_ratio = 0.25;
};

/// |det Hess u - eps| from local quadratic fits u(x, y) over index-nearest
/// samples. Stencils with a singular sample, a sign change of h, a
/// near-fold planar map, or an ill-conditioned design matrix are skipped and counted.
struct HessianField {
  std::vector<double> residual;   // per sample; NaN where no fit was made
  std::vector<char> skipped;      // 1 where the stencil was rejected
};
HessianField hessian_field(const SurfaceMesh& mesh, const HessianOptions& opts = {});

VerificationReport hessian_residual(const SurfaceMesh& mesh, const HessianOptions& opts = {});

/// Central-difference residuals of the structure relations at interior
/// nonsingular samples, each relative to the size of its terms:
///   conormal    <N, psi_a>
///   metric      h_ab + <N_a, psi_b>   (symmetrised)
///   det_signed  det[psi_1, psi_2, xi] - eps det[N_1, N_2, N]
///   det_abs     |det[psi_1, psi_2, xi]| - sqrt|det h|
///   metric_AB   h_ab - Im(A_a conj(B_b)), A = -u_y + j x, B = u_x + j y
///   height_13   height from the conjugated-integral variant (informational)
VerificationReport structure_residuals(const SurfaceMesh& mesh, std::optional<double> tol = std::nullopt);

/// Hessian and structure checks together.
VerificationReport verify_mesh(const SurfaceMesh& mesh, std::optional<double> hessian_tol = std::nullopt,
                               std::optional<double> structure_tol = std::nullopt);

struct AsymptoticFit {
  std::array<double, 6> E{};  // 1, x, y, x^2, xy, y^2
  double a = 0.0;             // coefficient of log(x^2 + y^2)
  double residual = 0.0;      // |fit - u| / |u| over the band
  int samples = 0;
};

/// Least squares over the outer band r >= r_out - far_fraction (r_out - r_in).
AsymptoticFit asymptotic_fit(const SurfaceMesh& mesh, double far_fraction = 0.2);

}  // namespace ias::verify
