#include "ias/weier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ias/format.hpp"
#include "ias/parallel.hpp"
#include "ias/quadrature.hpp"

namespace ias::weier {

WeierstrassData::WeierstrassData(holo::Expr g, holo::Expr f, DomainSpec dom, std::string label)
    : G(std::move(g)), F(std::move(f)), eps(G.eps()), domain(std::move(dom)), name(std::move(label)) {
  if (F.eps() != G.eps()) throw AlgebraMismatch();
  dG = G.derive();
  dF = F.derive();
  d2G = dG.derive();
  d2F = dF.derive();
}

PointValues evaluate_point(const WeierstrassData& data, const CEps& z, const CEps& integral_FdG) {
  PointValues v;
  v.G = data.G.eval(z);
  v.F = data.F.eval(z);
  v.dG = data.dG.eval(z);
  v.dF = data.dF.eval(z);
  const CEps X = v.G + conj(v.F);
  const CEps W = conj(v.F) - v.G;
  const double height = 0.5 * mod_sq(v.G) - 0.5 * mod_sq(v.F) + (v.G * v.F).re() -
                        2.0 * integral_FdG.re() + data.height_offset;
  v.psi = Vec3(X.re(), X.im(), height);
  v.N = Vec3(W.re(), data.eps * W.im(), 1.0);
  v.lambda = mod_sq(v.dG) - mod_sq(v.dF);
  v.scale = euclid(v.dG) * euclid(v.dG) + euclid(v.dF) * euclid(v.dF);
  return v;
}

namespace {

quad::Integrand FdG_integrand(const WeierstrassData& data) {
  return [&data](const CEps& z) { return data.F.eval(z) * data.dG.eval(z); };
}

double default_guard(const DomainSpec& d) {
  if (d.guard_radius > 0.0) return d.guard_radius;
  if (d.kind == DomainKind::annulus) return 1e-3 * d.r_out();
  return 1e-3 * std::max(d.p1_max - d.p1_min, d.p2_max - d.p2_min);
}

int nearest_index(double value, double lo, double step, int n) {
  const long k = std::lround((value - lo) / step);
  return static_cast<int>(std::clamp<long>(k, 0, n - 1));
}

}  // namespace

CEps integrate_FdG(const WeierstrassData& data, const std::vector<CEps>& path) {
  const auto f = FdG_integrand(data);
  CEps total = CEps::real(0.0, data.eps);
  for (std::size_t k = 1; k < path.size(); ++k) total += quad::segment(f, path[k - 1], path[k]);
  return total;
}

std::optional<double> detect_period(const WeierstrassData& data) {
  if (data.domain.kind != DomainKind::annulus) return std::nullopt;
  const double r = std::sqrt(data.domain.r_in() * data.domain.r_out());
  const CEps loop = quad::circle(FdG_integrand(data), CEps::real(0.0, 1), r);
  return -2.0 * loop.re();
}

SurfaceMesh eval_surface(const WeierstrassData& data, const SurfaceOptions& opts) {
  const DomainSpec& dom = data.domain;
  dom.validate(data.eps);
  if (dom.kind == DomainKind::asymptotic)
    throw InvalidParameter("Weierstrass surfaces are evaluated on rectangle or annulus grids");
  const int n1 = dom.n1, n2 = dom.n2, eps = data.eps;

  SurfaceMesh mesh;
  mesh.eps = eps;
  mesh.domain = dom;
  mesh.samples.resize(static_cast<std::size_t>(n1) * n2);
  mesh.provenance = data.name.empty() ? "G = " + data.G.str() + ", F = " + data.F.str() : data.name;

  std::vector<CEps> z(mesh.samples.size());
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) z[static_cast<std::size_t>(j) * n1 + i] = dom.point(dom.p1(i), dom.p2(j), eps);
  auto idx = [n1](int i, int j) { return static_cast<std::size_t>(j) * n1 + i; };

  const double guard = default_guard(dom);
  for (const CEps& p : data.punctures) {
    for (const CEps& w : z) {
      if (euclid(w - p) < guard)
        throw InvalidParameter("grid sample " + to_string(w) + " within the guard radius of puncture " +
                               to_string(p));
    }
  }

  // Serial accumulation of int F dG: first along the base line, then each
  // column (rectangle) or ring (annulus) independently. Fixed order, so the
  // result does not depend on the worker count.
  const auto f = FdG_integrand(data);
  auto seg = [&](const CEps& a, const CEps& b) { return quad::segment(f, a, b); };
  std::vector<CEps> I(mesh.samples.size(), CEps::real(0.0, eps));
  const CEps base = dom.base(eps);

  if (dom.kind == DomainKind::rectangle) {
    const int ib = nearest_index(base.re(), dom.p1_min, dom.step1(), n1);
    const int jb = nearest_index(base.im(), dom.p2_min, dom.step2(), n2);
    I[idx(ib, jb)] = seg(base, z[idx(ib, jb)]);
    for (int i = ib + 1; i < n1; ++i) I[idx(i, jb)] = I[idx(i - 1, jb)] + seg(z[idx(i - 1, jb)], z[idx(i, jb)]);
    for (int i = ib - 1; i >= 0; --i) I[idx(i, jb)] = I[idx(i + 1, jb)] + seg(z[idx(i + 1, jb)], z[idx(i, jb)]);
    parallel_for(static_cast<std::size_t>(n1), [&](std::size_t col) {
      const int i = static_cast<int>(col);
      for (int j = jb + 1; j < n2; ++j) I[idx(i, j)] = I[idx(i, j - 1)] + seg(z[idx(i, j - 1)], z[idx(i, j)]);
      for (int j = jb - 1; j >= 0; --j) I[idx(i, j)] = I[idx(i, j + 1)] + seg(z[idx(i, j + 1)], z[idx(i, j)]);
    });
  } else {
    const int ib = nearest_index(base.re(), dom.p1_min, dom.step1(), n1);
    I[idx(ib, 0)] = seg(base, z[idx(ib, 0)]);
    for (int i = ib + 1; i < n1; ++i) I[idx(i, 0)] = I[idx(i - 1, 0)] + seg(z[idx(i - 1, 0)], z[idx(i, 0)]);
    for (int i = ib - 1; i >= 0; --i) I[idx(i, 0)] = I[idx(i + 1, 0)] + seg(z[idx(i + 1, 0)], z[idx(i, 0)]);
    parallel_for(static_cast<std::size_t>(n1), [&](std::size_t ring) {
      const int i = static_cast<int>(ring);
      for (int j = 1; j < n2; ++j) I[idx(i, j)] = I[idx(i, j - 1)] + seg(z[idx(i, j - 1)], z[idx(i, j)]);
    });
    // Every ring winds once around the puncture; the loops are homotopic.
    const double period = *detect_period(data);
    const CEps first_loop = I[idx(0, n2 - 1)] - I[idx(0, 0)];
    for (int i = 0; i < n1; ++i) {
      const CEps loop = I[idx(i, n2 - 1)] - I[idx(i, 0)];
      const double jump = -2.0 * loop.re();
      const double tol = opts.period_tolerance * std::max(1.0, std::abs(period));
      if (std::abs(jump - period) > tol || euclid(loop - first_loop) > tol) {
        throw InconsistentPeriod("ring at r = " + format_double(dom.p1(i)) + " has height jump " +
                                 format_double(jump) + ", loop quadrature gives " + format_double(period));
      }
    }
    mesh.vertical_period = period;
  }

  parallel_for(mesh.samples.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(n1));
    const int j = static_cast<int>(k / static_cast<std::size_t>(n1));
    Sample& s = mesh.samples[k];
    s.p1 = dom.p1(i);
    s.p2 = dom.p2(j);
    s.z = z[k];
    const PointValues v = evaluate_point(data, z[k], I[k]);
    s.psi = v.psi;
    s.N = v.N;
    s.h_degeneracy = v.lambda;
    // h = lambda |dz|^2 pulled back: |dz/ds|^2 = 1, |dz/dt|^2 = eps on
    // rectangles; the annulus grid is conformal with factor |z|^2.
    s.hE = v.lambda;
    s.hF = 0.0;
    if (dom.kind == DomainKind::annulus) s.hE *= mod_sq(s.z);
    s.hG = dom.kind == DomainKind::rectangle ? eps * v.lambda : s.hE;
    s.singular = std::abs(v.lambda) <= opts.singular_threshold * v.scale;
  });

  mesh.source = std::make_shared<const WeierstrassData>(data);
  return mesh;
}

Vec3 point_on_surface(const SurfaceMesh& mesh, const CEps& z) {
  if (!mesh.source) throw InvalidParameter("mesh has no generating data");
  const WeierstrassData& data = *mesh.source;
  const DomainSpec& dom = mesh.domain;
  int i = 0, j = 0;
  if (dom.kind == DomainKind::annulus) {
    double th = std::atan2(z.im(), z.re());
    if (th < 0) th += 2.0 * std::numbers::pi;
    i = nearest_index(std::log(euclid(z)), dom.p1_min, dom.step1(), dom.n1);
    j = nearest_index(th, dom.p2_min, dom.step2(), dom.n2);
  } else {
    i = nearest_index(z.re(), dom.p1_min, dom.step1(), dom.n1);
    j = nearest_index(z.im(), dom.p2_min, dom.step2(), dom.n2);
  }
  const Sample& s = mesh.at(i, j);
  // Re of int F dG at the sample, recovered from its height.
  const CEps G = data.G.eval(s.z), F = data.F.eval(s.z);
  const double re_integral =
      (0.5 * mod_sq(G) - 0.5 * mod_sq(F) + (G * F).re() + data.height_offset - s.psi.z()) / 2.0;
  const CEps extra = integrate_FdG(data, {s.z, z});
  return evaluate_point(data, z, CEps{re_integral + extra.re(), 0.0, data.eps}).psi;
}

DegeneracyJet degeneracy_jet(const WeierstrassData& data, double p1, double p2) {
  const CEps z = data.domain.point(p1, p2, data.eps);
  const auto [t1, t2] = data.domain.tangents(p1, p2, data.eps);
  const CEps g1 = data.dG.eval(z), g2 = data.d2G.eval(z);
  const CEps f1 = data.dF.eval(z), f2 = data.d2F.eval(z);
  DegeneracyJet jet;
  jet.value = mod_sq(g1) - mod_sq(f1);
  // d/dp |f'(z(p))|^2 = 2 Re(f''(z) z_p conj(f'(z)))
  jet.d1 = 2.0 * ((g2 * t1 * conj(g1)).re() - (f2 * t1 * conj(f1)).re());
  jet.d2 = 2.0 * ((g2 * t2 * conj(g1)).re() - (f2 * t2 * conj(f1)).re());
  jet.scale = euclid(g1) * euclid(g1) + euclid(f1) * euclid(f1);
  return jet;
}

}  // namespace ias::weier
