#pragma once

// The geometric Cauchy problem: find the improper affine map through a
// curve alpha with prescribed conormal U along it.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ias/holo.hpp"
#include "ias/mesh.hpp"
#include "ias/weier.hpp"

namespace ias::cauchy {

using holo::CurveSeries;
using holo::PlanarSeries;

struct AdmissiblePair {
  CurveSeries alpha;
  CurveSeries U;
  int eps = 1;
  double s_min = -1.0, s_max = 1.0;
};

struct AdmissibilityReport {
  std::vector<double> s;
  std::vector<double> lambda;      // <alpha'', U>
  std::vector<double> lambda_alt;  // -<alpha', U'>
  double tolerance = 0.0;
  double normalization_error = 0.0;  // max |<xi, U> - 1|
  double tangency_error = 0.0;       // max |<alpha', U>|
  double lambda_gap = 0.0;           // max |lambda - lambda_alt|
  /// Samples with |lambda| <= tolerance and interpolated sign changes.
  std::vector<double> characteristic_points;
  bool non_characteristic = false;
  bool lambda_constant = false;
  /// max | [alpha', alpha'', xi] + eps [U', U'', xi] |
  double bracket_residual = 0.0;
  bool bracket_identity = false;
  bool geodesic = false;  // bracket identity with constant lambda
};

/// Samples the interval; InvalidPair if the normalization or tangency
/// condition fails beyond the tolerance (default 1e-8 times the data scale).
AdmissibilityReport check_admissible(const AdmissiblePair& pair, int samples = 201,
                                     std::optional<double> tolerance = std::nullopt);

/// Pair with s replaced by -s.
AdmissiblePair reflect(const AdmissiblePair& pair);

struct BjorlingResult {
  weier::WeierstrassData data;
  SurfaceMesh mesh;
  double anchor = 0.0;             // s0, where the height is matched
  double curve_residual = 0.0;     // max |psi(s, 0) - alpha(s)|
  double conormal_residual = 0.0;  // max |N(s, 0) - U(s)|
  double tolerance = 0.0;
};

/// Surface on [s_min, s_max] x [-T, T] through alpha with conormal U.
/// CharacteristicDataError if lambda vanishes on the interval.
BjorlingResult solve_bjorling(const AdmissiblePair& pair, double half_width, int n1, int n2);

/// Weierstrass data of the solution: Phi = (U1 - j alpha2, U2 + j alpha1, 1)
/// extended off the real axis, read as (-B, A, 1).
weier::WeierstrassData bjorling_data(const AdmissiblePair& pair, const DomainSpec& domain);

// ------------------------------------------------------ characteristic case

/// eps = -1 data in null coordinates: conormal (a(u) + b(v), 1), planar
/// position rotated from b - a. The height is anchored at (u_base, v_base).
struct CharacteristicData {
  PlanarSeries a_curve;
  PlanarSeries b_curve;
  double u_base = 0.0, v_base = 0.0;
  double base_height = 0.0;
};

/// Mesh on an asymptotic (u, v) grid; hE = hG = 0 and hF = h(d/du, d/dv).
/// InconsistentData if the height form fails to close beyond closure_tol
/// (relative to the height scale).
SurfaceMesh build_characteristic_family(const CharacteristicData& data, const DomainSpec& domain,
                                        double closure_tol = 1e-8);

// ------------------------------------------------------------- data files

/// Curve data file:
///
///   # comment
///   eps = 1                  (top-level keys before any section)
///   interval = -1 1          Bjorling s-range
///   u_interval = -1 1        characteristic ranges, base point and height
///   v_interval = -1 1
///   base = 0 0
///   base_height = 0
///   [alpha]                  sections: alpha, U  or  a_curve, b_curve
///   center = 0
///   order = 2                optional; defaults to the highest c<k>
///   trust_radius = 4         optional
///   c0 = 0 0 0               coefficient rows (2 values for a_curve/b_curve)
///
/// Missing rows below the order are zero.
struct CurveFile {
  int eps = 1;
  std::optional<AdmissiblePair> pair;
  std::optional<CharacteristicData> characteristic;
  double u_min = -1.0, u_max = 1.0, v_min = -1.0, v_max = 1.0;
};

CurveFile parse_curve_file(std::string_view text);
CurveFile load_curve_file(const std::string& path);

}  // namespace ias::cauchy
