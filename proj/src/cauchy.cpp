#include "ias/cauchy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "ias/format.hpp"
#include "ias/parallel.hpp"

namespace ias::cauchy {

using holo::Expr;
using holo::PowerSeries;
using holo::Triple;

namespace {

double dot(const Triple& a, const Triple& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double bracket(const Triple& a, const Triple& b) { return a[0] * b[1] - a[1] * b[0]; }  // [a, b, xi]
double norm(const Triple& a) { return std::sqrt(dot(a, a)); }

std::vector<double> sample_points(double lo, double hi, int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return s;
}

}  // namespace

AdmissibilityReport check_admissible(const AdmissiblePair& pair, int samples, std::optional<double> tolerance) {
  require_eps(pair.eps);
  if (pair.alpha.order() < 3 || pair.U.order() < 3)
    throw InvalidPair("admissible pairs need series of order >= 3");
  if (!(pair.s_max > pair.s_min)) throw InvalidParameter("empty curve interval");
  if (samples < 2) throw InvalidParameter("need at least 2 samples");
  AdmissibilityReport r;
  r.s = sample_points(pair.s_min, pair.s_max, samples);
  double scale = 1.0;
  for (double s : r.s) scale = std::max({scale, norm(pair.alpha.eval(s)), norm(pair.U.eval(s))});
  r.tolerance = tolerance.value_or(1e-8 * scale);
  const double tol = r.tolerance;

  std::vector<double> bracket_values;
  for (double s : r.s) {
    const Triple U = pair.U.eval(s), U1 = pair.U.eval_derivative(s, 1), U2 = pair.U.eval_derivative(s, 2);
    const Triple a1 = pair.alpha.eval_derivative(s, 1), a2 = pair.alpha.eval_derivative(s, 2);
    r.normalization_error = std::max(r.normalization_error, std::abs(U[2] - 1.0));
    r.tangency_error = std::max(r.tangency_error, std::abs(dot(a1, U)));
    r.lambda.push_back(dot(a2, U));
    r.lambda_alt.push_back(-dot(a1, U1));
    r.lambda_gap = std::max(r.lambda_gap, std::abs(r.lambda.back() - r.lambda_alt.back()));
    r.bracket_residual = std::max(r.bracket_residual, std::abs(bracket(a1, a2) + pair.eps * bracket(U1, U2)));
  }
  if (r.normalization_error > tol)
    throw InvalidPair("<xi, U> = 1 violated by " + format_double(r.normalization_error));
  if (r.tangency_error > tol) throw InvalidPair("<alpha', U> = 0 violated by " + format_double(r.tangency_error));

  double lo = r.lambda.front(), hi = r.lambda.front();
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    const double l = r.lambda[i];
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    if (std::abs(l) <= tol) {
      r.characteristic_points.push_back(r.s[i]);
    } else if (i > 0 && std::abs(r.lambda[i - 1]) > tol && (l > 0) != (r.lambda[i - 1] > 0)) {
      const double w = r.lambda[i - 1] / (r.lambda[i - 1] - l);
      r.characteristic_points.push_back(r.s[i - 1] + w * (r.s[i] - r.s[i - 1]));
    }
  }
  r.non_characteristic = r.characteristic_points.empty();
  r.lambda_constant = hi - lo <= tol;
  r.bracket_identity = r.bracket_residual <= tol;
  r.geodesic = r.bracket_identity && r.lambda_constant;
  return r;
}

namespace {

PowerSeries reflect_series(const PowerSeries& p) {
  std::vector<double> c = p.coeffs();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return PowerSeries(-p.center(), std::move(c), p.trust_radius());
}

CurveSeries reflect_curve(const CurveSeries& c) {
  return CurveSeries({reflect_series(c.component(0)), reflect_series(c.component(1)), reflect_series(c.component(2))});
}

void check_strip(const PowerSeries& p, const DomainSpec& d, int eps) {
  double reach = 0.0;
  for (double s : {d.p1_min, d.p1_max}) {
    for (double t : {d.p2_min, d.p2_max}) {
      if (eps > 0) reach = std::max(reach, std::hypot(s - p.center(), t));
      else reach = std::max({reach, std::abs(s + t - p.center()), std::abs(s - t - p.center())});
    }
  }
  if (reach > p.trust_radius())
    throw TrustRadiusError("strip reaches distance " + format_double(reach) + " from the expansion point " +
                           format_double(p.center()) + ", beyond the trust radius " +
                           format_double(p.trust_radius()));
}

}  // namespace

AdmissiblePair reflect(const AdmissiblePair& pair) {
  AdmissiblePair r = pair;
  r.alpha = reflect_curve(pair.alpha);
  r.U = reflect_curve(pair.U);
  r.s_min = -pair.s_max;
  r.s_max = -pair.s_min;
  return r;
}

weier::WeierstrassData bjorling_data(const AdmissiblePair& pair, const DomainSpec& domain) {
  const int eps = pair.eps;
  for (int k = 0; k < 2; ++k) {
    check_strip(pair.alpha.component(k), domain, eps);
    check_strip(pair.U.component(k), domain, eps);
  }
  auto ext = [eps](const PowerSeries& p) { return Expr::extension(p, eps); };
  const Expr j = Expr::constant(CEps::unit_j(eps));
  const Expr phi1 = ext(pair.U.component(0)) - j * ext(pair.alpha.component(1));
  const Expr phi2 = ext(pair.U.component(1)) + j * ext(pair.alpha.component(0));
  const Expr B = -phi1;
  const Expr A = phi2;
  const Expr half = Expr::constant(0.5, eps);
  const Expr ej = Expr::constant(CEps{0.0, static_cast<double>(eps), eps});
  return weier::WeierstrassData(half * (B - ej * A), half * (-B - ej * A), domain, "bjorling");
}

BjorlingResult solve_bjorling(const AdmissiblePair& pair, double half_width, int n1, int n2) {
  if (!(half_width > 0.0)) throw InvalidParameter("strip half-width must be positive");
  const AdmissibilityReport adm = check_admissible(pair);
  if (!adm.non_characteristic)
    throw CharacteristicDataError("lambda vanishes at s = " + format_double(adm.characteristic_points.front()) +
                                  "; the Cauchy problem is characteristic there");

  BjorlingResult out{bjorling_data(pair, DomainSpec::rectangle(pair.s_min, pair.s_max, -half_width, half_width,
                                                                n1, n2)),
                     {}, 0.0, 0.0, 0.0, adm.tolerance};
  weier::WeierstrassData& data = out.data;
  const int eps = pair.eps;
  out.anchor = std::clamp(pair.alpha.center(), pair.s_min, pair.s_max);
  const CEps z0{out.anchor, 0.0, eps};
  data.domain.z_base = z0;
  const weier::PointValues v0 = weier::evaluate_point(data, z0, CEps::real(0.0, eps));
  data.height_offset = pair.alpha.eval(out.anchor)[2] - v0.psi.z();

  out.mesh = weier::eval_surface(data);

  for (double s : sample_points(pair.s_min, pair.s_max, std::max(n1, 2))) {
    const CEps z{s, 0.0, eps};
    const weier::PointValues v = weier::evaluate_point(data, z, weier::integrate_FdG(data, {z0, z}));
    const Triple a = pair.alpha.eval(s), U = pair.U.eval(s);
    out.curve_residual = std::max(out.curve_residual, (v.psi - Vec3(a[0], a[1], a[2])).norm());
    out.conormal_residual = std::max(out.conormal_residual, (v.N - Vec3(U[0], U[1], U[2])).norm());
  }
  return out;
}

// ------------------------------------------------------ characteristic case

namespace {

using Planar = std::array<double, 2>;

// Rotation inverting xi x (x, y, .) = (-y, x, 0): (p1, p2) -> (p2, -p1).
Planar rot(const Planar& p) { return {p[1], -p[0]}; }
double dot2(const Planar& a, const Planar& b) { return a[0] * b[0] + a[1] * b[1]; }
Planar add(const Planar& a, const Planar& b) { return {a[0] + b[0], a[1] + b[1]}; }
Planar sub(const Planar& a, const Planar& b) { return {a[0] - b[0], a[1] - b[1]}; }

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12);
}

}  // namespace

SurfaceMesh build_characteristic_family(const CharacteristicData& cd, const DomainSpec& domain,
                                        double closure_tol) {
  if (domain.kind != DomainKind::asymptotic) throw InvalidParameter("characteristic meshes use asymptotic grids");
  domain.validate(-1);
  const int n1 = domain.n1, n2 = domain.n2;
  const auto& A = cd.a_curve;
  const auto& Bc = cd.b_curve;
  const holo::PlanarSeries dA = A.derivative(), dB = Bc.derivative();
  const double ub = cd.u_base, vb = cd.v_base;

  // dw = <a + b, R a'> du - <a + b, R b'> dv
  auto du_form = [&](double v) {
    const Planar bv = Bc.eval(v);
    return [&A, &dA, bv](double u) { return dot2(add(A.eval(u), bv), rot(dA.eval(u))); };
  };
  auto dv_form = [&](double u) {
    const Planar au = A.eval(u);
    return [&Bc, &dB, au](double v) { return -dot2(add(au, Bc.eval(v)), rot(dB.eval(v))); };
  };

  SurfaceMesh mesh;
  mesh.eps = -1;
  mesh.domain = domain;
  mesh.samples.resize(static_cast<std::size_t>(n1) * n2);
  mesh.provenance = "characteristic family";
  std::vector<double> row(static_cast<std::size_t>(n1));
  const auto f_row = du_form(vb);
  for (int i = 0; i < n1; ++i) row[static_cast<std::size_t>(i)] = integrate(f_row, ub, domain.p1(i));
  std::vector<double> alt_col(static_cast<std::size_t>(n2));
  const auto f_col = dv_form(ub);
  for (int j = 0; j < n2; ++j) alt_col[static_cast<std::size_t>(j)] = integrate(f_col, vb, domain.p2(j));

  std::vector<double> closure(mesh.samples.size());
  parallel_for(mesh.samples.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(n1));
    const int j = static_cast<int>(k / static_cast<std::size_t>(n1));
    const double u = domain.p1(i), v = domain.p2(j);
    const double w = cd.base_height + row[static_cast<std::size_t>(i)] + integrate(dv_form(u), vb, v);
    const double w_alt = cd.base_height + alt_col[static_cast<std::size_t>(j)] + integrate(du_form(v), ub, u);
    closure[k] = std::abs(w - w_alt);

    const Planar a = A.eval(u), b = Bc.eval(v);
    const Planar a1 = dA.eval(u), b1 = dB.eval(v);
    const Planar p = rot(sub(b, a));
    const Planar n = add(a, b);
    Sample& s = mesh.samples[k];
    s.p1 = u;
    s.p2 = v;
    s.z = domain.point(u, v, -1);
    s.psi = Vec3(p[0], p[1], w);
    s.N = Vec3(n[0], n[1], 1.0);
    const double huv = -dot2(a1, rot(b1));
    s.hE = 0.0;
    s.hF = huv;
    s.hG = 0.0;
    s.h_degeneracy = huv;
    s.singular = std::abs(huv) <= 1e-12 * std::sqrt(dot2(a1, a1) * dot2(b1, b1));
  });

  double worst = 0.0, scale = 1.0;
  std::size_t where = 0;
  for (std::size_t k = 0; k < closure.size(); ++k) {
    scale = std::max(scale, std::abs(mesh.samples[k].psi.z()));
    if (closure[k] > worst) {
      worst = closure[k];
      where = k;
    }
  }
  if (worst > closure_tol * scale)
    throw InconsistentData("height form not closed: path discrepancy " + format_double(worst) + " at (u, v) = (" +
                           format_double(mesh.samples[where].p1) + ", " + format_double(mesh.samples[where].p2) +
                           ")");
  return mesh;
}

}  // namespace ias::cauchy
