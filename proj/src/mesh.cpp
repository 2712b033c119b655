#include "ias/mesh.hpp"

#include <cmath>
#include <numbers>

#include "ias/format.hpp"

namespace ias {

DomainSpec DomainSpec::rectangle(double s0, double s1, double t0, double t1, int ns, int nt) {
  DomainSpec d;
  d.kind = DomainKind::rectangle;
  d.p1_min = s0;
  d.p1_max = s1;
  d.p2_min = t0;
  d.p2_max = t1;
  d.n1 = ns;
  d.n2 = nt;
  return d;
}

DomainSpec DomainSpec::annulus(double r_in, double r_out, int nr, int ntheta) {
  DomainSpec d;
  d.kind = DomainKind::annulus;
  if (!(r_in > 0.0) || !(r_out > r_in)) throw InvalidParameter("annulus radii need 0 < r_in < r_out");
  d.p1_min = std::log(r_in);
  d.p1_max = std::log(r_out);
  d.p2_min = 0.0;
  d.p2_max = 2.0 * std::numbers::pi;
  d.n1 = nr;
  d.n2 = ntheta;
  return d;
}

CEps DomainSpec::point(double a, double b, int eps) const {
  switch (kind) {
    case DomainKind::rectangle:
      return {a, b, eps};
    case DomainKind::annulus:
      return {std::exp(a) * std::cos(b), std::exp(a) * std::sin(b), eps};
    case DomainKind::asymptotic:
      return {0.5 * (a + b), 0.5 * (a - b), eps};
  }
  return {a, b, eps};
}

std::pair<CEps, CEps> DomainSpec::tangents(double a, double b, int eps) const {
  switch (kind) {
    case DomainKind::rectangle:
      return {CEps{1.0, 0.0, eps}, CEps{0.0, 1.0, eps}};
    case DomainKind::annulus:
      return {CEps{std::exp(a) * std::cos(b), std::exp(a) * std::sin(b), eps},
              CEps{-std::exp(a) * std::sin(b), std::exp(a) * std::cos(b), eps}};
    case DomainKind::asymptotic:
      return {CEps{0.5, 0.5, eps}, CEps{0.5, -0.5, eps}};
  }
  return {CEps{1.0, 0.0, eps}, CEps{0.0, 1.0, eps}};
}

CEps DomainSpec::base(int eps) const {
  if (z_base) return CEps{z_base->re(), z_base->im(), eps};
  switch (kind) {
    case DomainKind::rectangle:
      if (p1_min <= 0.0 && 0.0 <= p1_max && p2_min <= 0.0 && 0.0 <= p2_max) return {0.0, 0.0, eps};
      return {p1_min, p2_min, eps};
    case DomainKind::annulus:
      return {r_in(), 0.0, eps};
    case DomainKind::asymptotic:
      return point(p1_min, p2_min, eps);
  }
  return {0.0, 0.0, eps};
}

void DomainSpec::validate(int eps) const {
  require_eps(eps);
  if (n1 < 2 || n2 < 2) throw InvalidParameter("grid needs at least 2 samples per axis");
  if (!(p1_max > p1_min) || !(p2_max > p2_min)) throw InvalidParameter("empty parameter range");
  if (kind == DomainKind::annulus) {
    if (eps != 1) throw InvalidParameter("annulus domains need eps = +1");
    const double guard = guard_radius > 0.0 ? guard_radius : 1e-3 * r_out();
    if (r_in() < guard)
      throw InvalidParameter("inner radius " + format_double(r_in()) + " inside the puncture guard " +
                             format_double(guard));
  }
  if (kind == DomainKind::asymptotic && eps != -1)
    throw InvalidParameter("asymptotic grids need eps = -1");
  const CEps b = base(eps);
  if (kind == DomainKind::rectangle &&
      (b.re() < p1_min || b.re() > p1_max || b.im() < p2_min || b.im() > p2_max))
    throw InvalidParameter("base point " + to_string(b) + " outside the domain");
  if (kind == DomainKind::annulus) {
    // Height paths start on the theta = 0 spoke.
    if (b.im() != 0.0 || b.re() < r_in() * (1 - 1e-14) || b.re() > r_out() * (1 + 1e-14))
      throw InvalidParameter("annulus base point must lie on the spoke [r_in, r_out] x {0}");
  }
}

}  // namespace ias
