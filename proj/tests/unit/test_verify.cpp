#include <cmath>
#include <functional>

#include "doctest.h"
#include "ias/gallery.hpp"
#include "ias/verify.hpp"

using ias::DomainSpec;
using ias::SurfaceMesh;
using ias::gallery::get_example;
using namespace ias::verify;

namespace {

SurfaceMesh mesh_of(const std::string& name, int n, ias::gallery::Params p = {}) {
  return ias::weier::eval_surface(get_example(name, p, n, n));
}

// Graph mesh of u(x, y) on a plain (x, y) grid, built without the Weierstrass
// machinery. N = (-u_x, -u_y, 1); h is left positive.
SurfaceMesh graph_mesh(const std::function<double(double, double)>& u, double lo, double hi, int n, int eps) {
  SurfaceMesh m;
  m.eps = eps;
  m.domain = DomainSpec::rectangle(lo, hi, lo, hi, n, n);
  m.samples.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto& s = m.at(i, j);
      s.p1 = m.domain.p1(i);
      s.p2 = m.domain.p2(j);
      s.psi = ias::Vec3(s.p1, s.p2, u(s.p1, s.p2));
      s.h_degeneracy = 1.0;
    }
  return m;
}

// Radial solution of u_rr u_r / r = 1: u' = sqrt(r^2 + c).
double radial(double x, double y, double c) {
  const double r = std::hypot(x, y);
  return 0.5 * (r * std::sqrt(r * r + c) + c * std::asinh(r / std::sqrt(c)));
}

}  // namespace

TEST_CASE("resolution tolerance table") {
  auto tol = [](int n) { return resolution_tolerance(DomainSpec::rectangle(0, 1, 0, 1, n, n)); };
  CHECK(tol(256) == 1e-4);
  CHECK(tol(512) == 1e-4);
  CHECK(tol(128) == 2.5e-4);
  CHECK(tol(64) == 1e-3);
  CHECK(tol(32) == doctest::Approx(4e-3));
  CHECK(resolution_tolerance(DomainSpec::rectangle(0, 1, 0, 1, 256, 64)) == 1e-3);
}

TEST_CASE("paraboloids solve the PDE to rounding") {
  for (int eps : {1, -1}) {
    const auto m = mesh_of("paraboloid", 128, {{"eps", eps > 0 ? "1" : "-1"}});
    HessianOptions o;
    o.tol = 1e-6;
    const auto rep = hessian_residual(m, o);
    CHECK(rep.passed());
    CHECK(rep.get("hessian").n >= 50);
    CHECK(rep.get("hessian").skipped == 0);
    // Linear N and quadratic psi: differences are exact.
    const auto st = structure_residuals(m);
    CHECK(st.get("conormal").max <= 1e-10);
    CHECK(st.get("metric").max <= 1e-10);
    CHECK(st.get("det_signed").max <= 1e-10);
    CHECK(st.get("metric_AB").max <= 1e-10);
  }
}

TEST_CASE("hessian fit against an independent radial solution") {
  // det Hess = 1 away from the cone point at the origin; the fit error is
  // O(step^2).
  auto u = [](double x, double y) { return radial(x, y, 1.0); };
  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const auto rep = hessian_residual(graph_mesh(u, 1, 2, n, 1));
    const double e = rep.get("hessian").max;
    if (prev > 0.0) {
      CHECK(prev / e >= 3.0);
      CHECK(prev / e <= 5.0);
    }
    prev = e;
  }
  CHECK(prev <= 1e-4);
  // A different right-hand side is caught.
  auto v = [](double x, double y) { return x * x + y * y; };  // det Hess = 4
  const auto bad = hessian_residual(graph_mesh(v, -1, 1, 33, 1));
  CHECK(bad.get("hessian").max == doctest::Approx(3.0).epsilon(1e-9));
  CHECK_FALSE(bad.passed());
}

TEST_CASE("hessian convergence on curved gallery meshes") {
  for (const char* name : {"one_end", "helicoidal"}) {
    const double e1 = hessian_residual(mesh_of(name, 64)).get("hessian").max;
    const double e2 = hessian_residual(mesh_of(name, 128)).get("hessian").max;
    CHECK(e1 / e2 >= 3.0);
    CHECK(e1 / e2 <= 5.0);
  }
}

TEST_CASE("folds are skipped, not fitted") {
  const auto m = mesh_of("one_end", 64);
  const auto f = hessian_field(m);
  long skipped = 0;
  for (char s : f.skipped) skipped += s;
  CHECK(skipped > 0);
  // Rejected stencils lie where the planar map is close to folding,
  // (|G'| - |F'|) / (|G'| + |F'|) small with G' = 1, F' = 1 + 2z, or where the
  // stencil reaches across the fold |z + 1/2| = 1/2.
  const double reach = 2.0 * std::sqrt(2.0) * m.domain.step1();
  for (std::size_t k = 0; k < f.skipped.size(); ++k)
    if (f.skipped[k]) {
      const ias::CEps z = m.samples[k].z;
      const double dF = ias::euclid(ias::CEps{1, 0, 1} + 2.0 * z);
      const double ratio = std::abs(1.0 - dF) / (1.0 + dF);
      const double to_fold = std::abs(std::hypot(z.re() + 0.5, z.im()) - 0.5);
      CHECK((ratio <= 0.26 || to_fold <= reach));
    }
}

TEST_CASE("structure residuals converge at second order") {
  for (const char* name : {"helicoidal", "one_end", "punctured_split"}) {
    const auto a = structure_residuals(mesh_of(name, 64));
    const auto b = structure_residuals(mesh_of(name, 128));
    CHECK(b.passed());
    for (const char* check : {"conormal", "metric", "det_abs", "metric_AB"}) {
      const double ea = a.get(check).max, eb = b.get(check).max;
      if (ea < 1e-11) continue;  // exact to rounding
      CHECK(ea / eb >= 3.0);
      CHECK(ea / eb <= 5.0);
    }
  }
}

TEST_CASE("report plumbing") {
  const auto m = mesh_of("helicoidal", 32);
  const auto rep = structure_residuals(m, 1e-12);
  CHECK_FALSE(rep.passed());
  for (const auto& c : rep.checks) {
    CHECK(c.pass == (c.max <= c.tol));
    if (!c.pass) CHECK_FALSE(c.worst.empty());
  }
  CHECK(rep.get("height_13").pass);
  CHECK(std::isinf(rep.get("height_13").tol));
  CHECK_THROWS_AS(rep.get("nope"), ias::InvalidParameter);
  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("check,max,mean,n,tol,pass\n", 0) == 0);
  CHECK(csv.find("conormal,") != std::string::npos);
  CHECK(rep.to_text().find("FAIL conormal") != std::string::npos);
}

TEST_CASE("results do not depend on the worker count") {
  const auto m = mesh_of("two_end", 48);
  setenv("IAS_THREADS", "1", 1);
  const std::string one = verify_mesh(m).to_csv();
  setenv("IAS_THREADS", "3", 1);
  const std::string three = verify_mesh(m).to_csv();
  unsetenv("IAS_THREADS");
  CHECK(one == three);
}

TEST_CASE("asymptotic fits") {
  using ias::holo::Expr;
  const ias::weier::WeierstrassData par(Expr::variable(1), Expr::constant(0.0, 1), DomainSpec::annulus(1, 5, 64, 64));
  const auto fp = asymptotic_fit(ias::weier::eval_surface(par));
  CHECK(std::abs(fp.a) <= 1e-8);
  CHECK(std::abs(fp.E[3] - 0.5) <= 1e-8);
  CHECK(std::abs(fp.E[5] - 0.5) <= 1e-8);
  CHECK(std::abs(fp.E[4]) <= 1e-8);

  // Rotational end: u = rho^2/2 - log rho^2 + O(rho^-2).
  auto far = [](const char* name, double r_out) {
    auto d = get_example(name, {}, 64, 64);
    d.domain = DomainSpec::annulus(2, r_out, 128, 128);
    return asymptotic_fit(ias::weier::eval_surface(d));
  };
  const auto r10 = far("rotational", 10), r20 = far("rotational", 20);
  CHECK(r20.residual < r10.residual);
  CHECK(std::abs(r20.a + 1.0) < std::abs(r10.a + 1.0));
  CHECK(std::abs(r20.a + 1.0) <= 1e-2);

  // two_end (a, b, c) = (2, 1, 0): planar x = 3 Re z, y = -Im z at infinity,
  // so E -> -x^2/6 - 3 y^2/2. The log coefficient in the planar basis is a
  // regression constant.
  const auto t20 = far("two_end", 20), t40 = far("two_end", 40);
  CHECK(t40.residual < t20.residual);
  CHECK(std::abs(t40.E[3] + 1.0 / 6.0) < std::abs(t20.E[3] + 1.0 / 6.0));
  CHECK(std::abs(t40.E[5] + 1.5) < std::abs(t20.E[5] + 1.5));
  CHECK(std::abs(t40.E[5] + 1.5) <= 1e-3);
  CHECK(t20.a == doctest::Approx(-0.000801642).epsilon(1e-4));

  auto rect = mesh_of("paraboloid", 16);
  CHECK_THROWS_AS(asymptotic_fit(rect), ias::InvalidParameter);
}
