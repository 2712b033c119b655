#include <cmath>

#include "doctest.h"
#include "ias/cauchy.hpp"

using namespace ias::cauchy;
using ias::holo::PowerSeries;

namespace {

PowerSeries poly(std::vector<double> c) {
  while (c.size() < 4) c.push_back(0.0);
  return PowerSeries(0.0, std::move(c));
}

AdmissiblePair pair(std::array<std::vector<double>, 3> a, std::array<std::vector<double>, 3> u, int eps,
                    double s0 = -1, double s1 = 1) {
  AdmissiblePair p;
  p.alpha = CurveSeries({poly(a[0]), poly(a[1]), poly(a[2])});
  p.U = CurveSeries({poly(u[0]), poly(u[1]), poly(u[2])});
  p.eps = eps;
  p.s_min = s0;
  p.s_max = s1;
  return p;
}

// alpha = (s, 0, s^2/2), U = (-s, 0, 1): the paraboloid along y = 0.
AdmissiblePair paraboloid_pair() { return pair({{{0, 1}, {0}, {0, 0, 0.5}}}, {{{0, -1}, {0}, {1}}}, 1); }
// u = x y along the diagonal.
AdmissiblePair saddle_pair() { return pair({{{0, 1}, {0, 1}, {0, 0, 1}}}, {{{0, -1}, {0, -1}, {1}}}, -1); }

PowerSeries trig(double r, bool sine, int order = 24) {
  std::vector<double> c(static_cast<std::size_t>(order + 1), 0.0);
  double f = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) f *= k;
    if (sine && k % 2 == 1) c[static_cast<std::size_t>(k)] = r * ((k / 2) % 2 ? -1 : 1) / f;
    if (!sine && k % 2 == 0) c[static_cast<std::size_t>(k)] = r * ((k / 2) % 2 ? -1 : 1) / f;
  }
  return PowerSeries(0.0, c, 10.0);
}

}  // namespace

TEST_CASE("admissibility oracles") {
  const auto r1 = check_admissible(paraboloid_pair());
  CHECK(r1.non_characteristic);
  for (std::size_t i = 0; i < r1.s.size(); ++i) {
    CHECK(r1.lambda[i] == doctest::Approx(1));
    CHECK(r1.lambda_alt[i] == doctest::Approx(1));
  }
  CHECK(r1.lambda_gap <= 1e-8);
  const auto r2 = check_admissible(saddle_pair());
  CHECK(r2.lambda.front() == doctest::Approx(2));
  CHECK(r2.lambda_constant);
  const auto r3 = check_admissible(pair({{{0, 1}, {0}, {0}}}, {{{0}, {0, -1}, {1}}}, -1));
  CHECK(!r3.non_characteristic);
  CHECK(r3.characteristic_points.size() == r3.s.size());
}

TEST_CASE("invalid pairs") {
  CHECK_THROWS_AS(check_admissible(pair({{{0, 1}, {0}, {0}}}, {{{0}, {0}, {2}}}, 1)), ias::InvalidPair);
  CHECK_THROWS_AS(check_admissible(pair({{{0, 1}, {0}, {0}}}, {{{1}, {0}, {1}}}, 1)), ias::InvalidPair);
  AdmissiblePair low = paraboloid_pair();
  low.alpha = CurveSeries(0.0, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0.5}});
  CHECK_THROWS_AS(check_admissible(low), ias::InvalidPair);
}

TEST_CASE("geodesic circle") {
  for (double r : {0.5, 1.0, 2.0}) {
    AdmissiblePair p;
    p.alpha = CurveSeries({trig(r, false), trig(r, true), poly({0.0})});
    p.U = CurveSeries({trig(-r, false), trig(-r, true), poly({1.0})});
    p.eps = -1;
    const auto rep = check_admissible(p);
    CHECK(rep.lambda.front() == doctest::Approx(r * r));
    CHECK(rep.lambda_constant);
    CHECK(rep.bracket_identity);
    CHECK(rep.geodesic);
    p.eps = 1;
    CHECK(!check_admissible(p).bracket_identity);
  }
}

TEST_CASE("elliptic solver recovers the paraboloid") {
  const auto res = solve_bjorling(paraboloid_pair(), 0.5, 41, 21);
  CHECK(res.curve_residual <= 1e-12);
  CHECK(res.conormal_residual <= 1e-12);
  for (const auto& s : res.mesh.samples) {
    CHECK(std::abs(s.psi.z() - 0.5 * (s.psi.x() * s.psi.x() + s.psi.y() * s.psi.y())) <= 1e-8);
    CHECK(s.psi.x() == doctest::Approx(s.z.re()));
    CHECK(s.psi.y() == doctest::Approx(s.z.im()));
  }
}

TEST_CASE("hyperbolic solver recovers u = xy") {
  const auto res = solve_bjorling(saddle_pair(), 0.5, 41, 21);
  CHECK(res.curve_residual <= 1e-12);
  for (const auto& s : res.mesh.samples) CHECK(std::abs(s.psi.z() - s.psi.x() * s.psi.y()) <= 1e-8);
}

TEST_CASE("curved data on the paraboloid") {
  // alpha = (s, s^3/5, (s^2 + s^6/25)/2) lies on u = (x^2 + y^2)/2.
  const auto p = pair({{{0, 1}, {0, 0, 0, 0.2}, {0, 0, 0.5, 0, 0, 0, 0.02}}}, {{{0, -1}, {0, 0, 0, -0.2}, {1}}}, 1);
  const auto rep = check_admissible(p);
  CHECK(rep.non_characteristic);
  const auto res = solve_bjorling(p, 0.4, 33, 17);
  CHECK(res.curve_residual <= 1e-10);
  for (const auto& s : res.mesh.samples)
    CHECK(std::abs(s.psi.z() - 0.5 * (s.psi.x() * s.psi.x() + s.psi.y() * s.psi.y())) <= 1e-8);
}

TEST_CASE("reflected data give the reflected surface") {
  const auto p = pair({{{0, 1}, {0, 0, 0, 0.2}, {0, 0, 0.5, 0, 0, 0, 0.02}}}, {{{0, -1}, {0, 0, 0, -0.2}, {1}}}, 1);
  for (int eps : {1, -1}) {
    auto q = p;
    q.eps = eps;
    if (eps < 0) q = saddle_pair();
    const auto a = solve_bjorling(q, 0.4, 33, 17);
    const auto b = solve_bjorling(reflect(q), 0.4, 33, 17);
    double worst = 0.0;
    for (int j = 0; j < 17; ++j)
      for (int i = 0; i < 33; ++i) worst = std::max(worst, (a.mesh.at(i, j).psi - b.mesh.at(32 - i, 16 - j).psi).norm());
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("characteristic points stop the solver") {
  // lambda = 1 - s^2 vanishes at s = +-1.
  const auto p = pair({{{0, 1}, {0}, {0, 0, 0.5, 0, -1.0 / 12}}}, {{{0, -1, 0, 1.0 / 3}, {0}, {1}}}, 1, -1.2, 1.2);
  const auto rep = check_admissible(p);
  REQUIRE(rep.characteristic_points.size() == 2);
  CHECK(rep.characteristic_points[0] == doctest::Approx(-1).epsilon(1e-3));
  CHECK_THROWS_AS(solve_bjorling(p, 0.2, 16, 16), ias::CharacteristicDataError);
}

TEST_CASE("strip beyond the trust radius") {
  auto p = paraboloid_pair();
  p.alpha = CurveSeries(0.0, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0.5}, {0, 0, 0}}, 1.2);
  CHECK_THROWS_AS(solve_bjorling(p, 1.0, 16, 16), ias::TrustRadiusError);
}

TEST_CASE("characteristic family") {
  CharacteristicData cd;
  cd.a_curve = ias::holo::PlanarSeries(poly({0, -1}), poly({0}));
  cd.b_curve = ias::holo::PlanarSeries(poly({0}), poly({0, -1}));
  auto dom = ias::DomainSpec::rectangle(-1, 1, -1, 1, 33, 33);
  dom.kind = ias::DomainKind::asymptotic;
  const auto m1 = build_characteristic_family(cd, dom);
  for (const auto& s : m1.samples) {
    CHECK(std::abs(s.psi.z() + s.psi.x() * s.psi.y()) <= 1e-12);
    CHECK(s.hE == 0);
    CHECK(s.hF != 0);
  }
  CharacteristicData other = cd;
  other.b_curve = ias::holo::PlanarSeries(poly({0, 0, 0.3}), poly({0, -1}));
  const auto m2 = build_characteristic_family(other, dom);
  double on_line = 0.0, off_line = 0.0;
  for (int j = 0; j < 33; ++j)
    for (int i = 0; i < 33; ++i) {
      const double d = (m1.at(i, j).psi - m2.at(i, j).psi).norm() + (m1.at(i, j).N - m2.at(i, j).N).norm();
      (j == 16 ? on_line : off_line) = std::max(j == 16 ? on_line : off_line, d);
    }
  CHECK(on_line <= 1e-8);
  CHECK(off_line >= 1e-2);
}

TEST_CASE("curve file parsing") {
  const char* text = R"(# paraboloid slice
eps = 1
interval = -1 1
[alpha]
center = 0
order = 3
c1 = 1 0 0
c2 = 0 0 0.5
[U]
c0 = 0 0 1
c1 = -1 0 0
c3 = 0 0 0
)";
  const auto f = parse_curve_file(text);
  REQUIRE(f.pair);
  CHECK(f.pair->alpha.order() == 3);
  CHECK(f.pair->U.eval(0.5)[0] == doctest::Approx(-0.5));
  CHECK(check_admissible(*f.pair).non_characteristic);

  const char* chars = "u_interval = -1 1\nbase = 0 0\n[a_curve]\nc1 = -1 0\n[b_curve]\nc1 = 0 -1\n";
  const auto g = parse_curve_file(chars);
  CHECK(g.characteristic);
  CHECK(g.eps == -1);

  auto line_of = [](const char* bad) {
    try {
      parse_curve_file(bad);
    } catch (const ias::ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("eps = 1\n[alpha]\nc0 = 1 2\n[U]\nc0 = 0 0 1\n") == 3);
  CHECK(line_of("eps = 1\n[alpha]\nc0 = 1 2 x\n") == 3);
  CHECK(line_of("eps = 1\nfoo = 2\n") == 2);
  CHECK(line_of("[beta]\n") == 1);
  CHECK(line_of("[alpha]\norder = 1\nc0 = 0 0 0\nc2 = 0 0 1\n") == 4);
  CHECK(line_of("eps = 3\n") == 1);
}
