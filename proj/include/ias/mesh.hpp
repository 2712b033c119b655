#pragma once

#include <Eigen/Core>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ias/cnum.hpp"

namespace ias {

using Vec3 = Eigen::Vector3d;

namespace weier {
struct WeierstrassData;
}

/// Parameter-space layout of a grid.
///   rectangle:  p1 = s, p2 = t, z = s + j t
///   annulus:    p1 = log r, p2 = theta in [0, 2 pi] (seam sampled twice), z = e^{p1 + j p2};
///               conformal, so relative radial resolution is uniform
///   asymptotic: p1 = u, p2 = v null coordinates, z = (u+v)/2 + j (u-v)/2 (eps = -1)
enum class DomainKind { rectangle, annulus, asymptotic };

struct DomainSpec {
  DomainKind kind = DomainKind::rectangle;
  double p1_min = -1.0, p1_max = 1.0;
  double p2_min = -1.0, p2_max = 1.0;
  int n1 = 64, n2 = 64;
  /// Start of every height path. Defaults: 0 for rectangles that contain
  /// it, else the (p1_min, p2_min) corner; (r_in, 0) for annuli.
  std::optional<CEps> z_base;
  /// Punctures closer than this to a sample are rejected. Annulus default
  /// is 1e-3 times the outer radius.
  double guard_radius = -1.0;

  static DomainSpec rectangle(double s0, double s1, double t0, double t1, int ns, int nt);
  static DomainSpec annulus(double r_in, double r_out, int nr, int ntheta);

  double step1() const { return (p1_max - p1_min) / (n1 - 1); }
  double step2() const { return (p2_max - p2_min) / (n2 - 1); }
  double p1(int i) const { return p1_min + i * step1(); }
  /// Annulus radii (p1 = log r).
  double r_in() const { return std::exp(p1_min); }
  double r_out() const { return std::exp(p1_max); }
  double p2(int j) const { return p2_min + j * step2(); }

  /// Parameter point to z.
  CEps point(double p1, double p2, int eps) const;
  /// dz/dp1 and dz/dp2 at a parameter point.
  std::pair<CEps, CEps> tangents(double p1, double p2, int eps) const;
  /// Base point resolved against the defaults.
  CEps base(int eps) const;

  void validate(int eps) const;
};

struct Sample {
  double p1 = 0.0, p2 = 0.0;
  CEps z;
  Vec3 psi = Vec3::Zero();
  Vec3 N = Vec3::Zero();
  /// Affine metric h(d/dp_a, d/dp_b) in grid parameters.
  double hE = 0.0, hF = 0.0, hG = 0.0;
  /// |G'|^2 - |F'|^2 (or h_uv on asymptotic grids); vanishes on the singular set.
  double h_degeneracy = 0.0;
  bool singular = false;
};

/// Grid of surface samples in row-major order: p1 varies fastest.
struct SurfaceMesh {
  int eps = 1;
  DomainSpec domain;
  std::vector<Sample> samples;
  std::optional<double> vertical_period;
  std::string provenance;
  /// Generating data, when known; enables exact refinement of singular curves.
  std::shared_ptr<const weier::WeierstrassData> source;

  int n1() const { return domain.n1; }
  int n2() const { return domain.n2; }
  const Sample& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * n1() + i]; }
  Sample& at(int i, int j) { return samples[static_cast<std::size_t>(j) * n1() + i]; }
};

}  // namespace ias
