// One PASS/FAIL line per acceptance criterion. `--criterion N` runs one,
// no argument runs all ten. Exit status is 0 iff every criterion run passed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ias/cauchy.hpp"
#include "ias/format.hpp"
#include "ias/gallery.hpp"
#include "ias/io.hpp"
#include "ias/ribaucour.hpp"
#include "ias/verify.hpp"

using namespace ias;
using ias::format_double;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

SurfaceMesh gallery_mesh(const std::string& name, int n, const gallery::Params& p = {}) {
  return weier::eval_surface(gallery::get_example(name, p, n, n));
}

// 1. det Hess u = eps on the elliptic and split paraboloids.
void c01(Outcome& o) {
  for (const char* eps : {"1", "-1"}) {
    verify::HessianOptions opts;
    opts.tol = 1e-6;
    const auto c = verify::hessian_residual(gallery_mesh("paraboloid", 128, {{"eps", eps}}), opts).get("hessian");
    o.detail << " eps=" << eps << ": max " << fmt(c.max) << " over " << c.n << " samples, " << c.skipped << " skipped;";
    o.require(c.pass && c.n > 0, std::string("hessian eps=") + eps);
  }
}

// 2. Structure residuals within the resolution tolerance at 256^2 and second
// order from 128^2 to 256^2 wherever they are above rounding.
void c02(Outcome& o) {
  const char* names[] = {"conormal", "metric", "det_signed", "det_abs", "metric_AB"};
  for (const auto& ex : gallery::examples()) {
    const auto coarse = verify::structure_residuals(gallery_mesh(ex.name, 128));
    const auto fine = verify::structure_residuals(gallery_mesh(ex.name, 256));
    o.detail << "\n  " << ex.name << ":";
    for (const char* name : names) {
      const auto& a = coarse.get(name);
      const auto& b = fine.get(name);
      o.detail << ' ' << name << ' ' << fmt(b.max);
      o.require(b.pass, ex.name + " " + name + " " + fmt(b.max) + " > tol " + fmt(b.tol));
      if (a.max < 1e-11) continue;
      const double ratio = a.max / b.max;
      o.detail << " (x" << fmt(ratio) << ")";
      o.require(ratio >= 3.0 && ratio <= 5.0, ex.name + " " + name + " ratio " + fmt(ratio));
    }
  }
}

// 3. Singular circle of (z, 1/z) and no singular curve on the paraboloid.
void c03(Outcome& o) {
  const auto curves = weier::extract_singular_curves(gallery_mesh("rotational", 128, {{"r", "1"}}));
  double worst = 0.0;
  std::size_t points = 0;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      worst = std::max(worst, std::abs(euclid(p.z) - 1.0));
      ++points;
    }
  o.detail << " rotational: " << curves.size() << " curve(s), " << points << " points, max ||z|-1| " << fmt(worst)
           << ";";
  o.require(curves.size() == 1 && curves[0].closed, "one closed curve");
  o.require(points > 0 && worst <= 1e-6, "distance to |z| = 1");
  const auto none = weier::extract_singular_curves(gallery_mesh("paraboloid", 128));
  o.detail << " paraboloid: " << none.size() << " curve(s)";
  o.require(none.empty(), "paraboloid has no singular curve");
}

// 4. Vertical period of (z, j/z) against 2 pi; the rotational example has none.
void c04(Outcome& o) {
  const auto multi = weier::detect_period(gallery::get_example("multivalued", {{"r", "1"}}));
  const auto rot = weier::detect_period(gallery::get_example("rotational", {{"r", "1"}}));
  const double m = multi ? std::abs(*multi) : 0.0;
  const double r = rot ? std::abs(*rot) : 0.0;
  o.detail << " multivalued |period| " << format_double(m) << " (2 pi = " << format_double(2 * pi)
           << ", loop integral -2 Re(2 pi j * j) = " << format_double(4 * pi) << "); rotational " << fmt(r);
  o.require(std::abs(m - 2 * pi) <= 1e-8, "multivalued period equals 2 pi");
  o.require(r <= 1e-8, "rotational period vanishes");
}

// 5. Explicit R solves the Riccati equation; RK4 reaches it at fourth order.
void c05(Outcome& o) {
  using ribaucour::HelicoidalClosedForm;
  const HelicoidalClosedForm sets[] = {
      HelicoidalClosedForm::from_ab(1, 1.0 / 3.0, {0, 0, 1}), HelicoidalClosedForm::from_ab(1, 1.0 / 3.0, {1, 0, 1}),
      HelicoidalClosedForm::from_ab(1, 3, {1, 0, 1}), HelicoidalClosedForm::from_ab(1, 2, {1, 1, 1})};
  const char* labels[] = {"(1,1/3,0)", "(1,1/3,1)", "(1,3,1)", "(1,2,1+j)"};
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int s = 0; s < 4; ++s) {
    const auto& p = sets[s];
    double worst = 0.0;
    for (int n = 0; n < 1000;) {
      const CEps z{u(rng), u(rng), 1};
      if (euclid(1.0 + p.k * exp(p.b * z)) < 0.1) continue;  // keep clear of poles
      worst = std::max(worst, ribaucour::closed_form_residual(p, z));
      ++n;
    }
    const auto data = ribaucour::helicoidal_data(p, DomainSpec::rectangle(-1, 2, -1, 1, 8, 8));
    ribaucour::RiccatiParams rp;
    rp.c = p.c;
    rp.G = data.G;
    rp.F = data.F;
    rp.z_init = {0, 0, 1};
    rp.R_init = ribaucour::closed_form_R(p, rp.z_init);
    const CEps end{1, 0.5, 1};
    auto error = [&](int steps) {
      const auto sol = ribaucour::riccati_integrate(rp, {rp.z_init, end}, steps);
      return euclid(sol.R.back() - ribaucour::closed_form_R(p, end)) / euclid(ribaucour::closed_form_R(p, end));
    };
    const double e256 = error(256);
    const double order = std::log2(error(16) / error(32));
    o.detail << "\n  " << labels[s] << ": residual " << fmt(worst) << ", RK4 rel. error at 256 steps " << fmt(e256)
             << ", order " << fmt(order);
    o.require(worst <= 1e-10, std::string(labels[s]) + " closed-form residual");
    o.require(e256 <= 1e-9, std::string(labels[s]) + " RK4 error");
    o.require(order >= 3.7 && order <= 4.3, std::string(labels[s]) + " RK4 order");
  }
}

ribaucour::TransformDiagnostics fig5(int n, int m) {
  const auto p = ribaucour::HelicoidalClosedForm::from_nm(1, n, m, {1, 0, 1});
  const auto pair = ribaucour::helicoidal_transform(p, ribaucour::default_domain(p, n, m, 128, 128));
  return ribaucour::analyze_transform(weier::eval_surface(pair.base), weier::eval_surface(pair.transformed), p,
                                      std::pair{n, m});
}

// 6. Product identity, real and consistent g, nodal set = singular curve.
void c06(Outcome& o) {
  const auto d = fig5(1, 3);
  o.detail << " (a,n,m,k)=(1,1,3,1): product " << fmt(d.product.max_residual) << ", g imag " << fmt(d.g.max_imag)
           << ", g gap " << fmt(d.g.max_component_gap) << ", nodal Hausdorff " << fmt(d.nodal_hausdorff)
           << " (2 steps " << fmt(d.nodal_tolerance) << "), " << d.nodal_curves << " nodal / " << d.singular_curves
           << " singular curves";
  o.require(d.product.max_residual <= 1e-8, "product identity");
  o.require(d.g.samples > 0 && d.g.max_imag <= 1e-8 && d.g.max_component_gap <= 1e-8, "g real and consistent");
  o.require(d.nodal_curves > 0 && d.singular_curves > 0 && d.nodal_hausdorff <= d.nodal_tolerance, "nodal set");
}

// 7. Translation per period strip and 2n punctures.
void c07(Outcome& o) {
  for (auto [n, m] : {std::pair{1, 3}, std::pair{2, 1}}) {
    const auto d = fig5(n, m);
    const int analytic = static_cast<int>(d.punctures.zeros.size() + d.punctures.poles.size());
    o.detail << "\n  (1," << n << "," << m << "): translation std " << fmt(d.translation_std) << ", punctures "
             << analytic << " analytic / " << d.zeros_counted + d.poles_counted << " counted, 2n = " << 2 * n;
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    o.require(d.translation && d.translation_std <= 1e-6, tag + " translation constant");
    o.require(analytic == 2 * n && d.zeros_counted + d.poles_counted == 2 * n, tag + " punctures per strip");
  }
}

cauchy::AdmissiblePair pair_from(const char* text) { return *cauchy::parse_curve_file(text).pair; }

// 8. Elliptic and hyperbolic solvers reproduce known graphs; reflection.
void c08(Outcome& o) {
  const auto par = pair_from(
      "eps = 1\ninterval = -1 1\n[alpha]\norder = 3\nc1 = 1 0 0\nc2 = 0 0 0.5\n[U]\norder = 3\nc0 = 0 0 1\nc1 = -1 0 0\n");
  const auto sad = pair_from(
      "eps = -1\ninterval = -1 1\n[alpha]\norder = 3\nc1 = 1 1 0\nc2 = 0 0 1\n[U]\norder = 3\nc0 = 0 0 1\n"
      "c1 = -1 -1 0\n");
  const int n1 = 81, n2 = 41;
  struct Case {
    const char* name;
    const cauchy::AdmissiblePair& pair;
    std::function<double(double, double)> u;
  };
  const Case cases[] = {{"paraboloid", par, [](double x, double y) { return 0.5 * (x * x + y * y); }},
                        {"u=xy", sad, [](double x, double y) { return x * y; }}};
  for (const auto& c : cases) {
    const auto a = cauchy::solve_bjorling(c.pair, 0.5, n1, n2);
    const auto b = cauchy::solve_bjorling(cauchy::reflect(c.pair), 0.5, n1, n2);
    double height = 0.0, mirror = 0.0;
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i) {
        const auto& s = a.mesh.at(i, j);
        height = std::max(height, std::abs(s.psi.z() - c.u(s.psi.x(), s.psi.y())));
        mirror = std::max(mirror, (s.psi - b.mesh.at(n1 - 1 - i, n2 - 1 - j).psi).norm());
      }
    o.detail << ' ' << c.name << ": height " << fmt(height) << ", reflection " << fmt(mirror) << ';';
    o.require(height <= 1e-8, std::string(c.name) + " height");
    o.require(mirror <= 1e-8, std::string(c.name) + " reflection");
  }
}

// 9. Shared a_curve, different b_curve: equal on the shared line only.
void c09(Outcome& o) {
  const char* head = "u_interval = -1 1\nv_interval = -1 1\nbase = 0 0\n[a_curve]\nc1 = -1 0\n[b_curve]\nc1 = 0 -1\n";
  const auto one = cauchy::parse_curve_file(head);
  const auto two = cauchy::parse_curve_file(std::string(head) + "c2 = 0.5 0\n");
  const int n = 65;
  DomainSpec dom = DomainSpec::rectangle(-1, 1, -1, 1, n, n);
  dom.kind = DomainKind::asymptotic;
  const auto m1 = cauchy::build_characteristic_family(*one.characteristic, dom);
  const auto m2 = cauchy::build_characteristic_family(*two.characteristic, dom);
  double on_line = 0.0, off_line = 0.0;
  const int line = n / 2;  // v = 0, the asymptotic line through the base point
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double d = (m1.at(i, j).psi - m2.at(i, j).psi).norm() + (m1.at(i, j).N - m2.at(i, j).N).norm();
      (j == line ? on_line : off_line) = std::max(j == line ? on_line : off_line, d);
    }
  o.detail << " shared line " << fmt(on_line) << ", elsewhere " << fmt(off_line);
  o.require(on_line <= 1e-8, "agreement on the shared line");
  o.require(off_line >= 1e-2, "difference elsewhere");
}

// 10. Byte-identical exports across worker counts; CSV round trip keeps
// every residual.
void c10(Outcome& o) {
  double worst = 0.0;
  for (const auto& ex : gallery::examples()) {
    std::string first[3];
    for (const char* threads : {"1", "3"}) {
      setenv("IAS_THREADS", threads, 1);
      const auto mesh = gallery_mesh(ex.name, 64);
      const std::string bytes[3] = {io::to_csv(mesh), io::to_obj(mesh, weier::extract_singular_curves(mesh)),
                                    io::to_ply(mesh)};
      for (int f = 0; f < 3; ++f) {
        if (first[f].empty()) first[f] = bytes[f];
        o.require(first[f] == bytes[f], ex.name + " export differs with IAS_THREADS=" + threads);
      }
    }
    unsetenv("IAS_THREADS");
    const auto mesh = gallery_mesh(ex.name, 64);
    const auto a = verify::verify_mesh(mesh);
    const auto b = verify::verify_mesh(io::from_csv(io::to_csv(mesh)));
    o.require(a.checks.size() == b.checks.size(), ex.name + " check count");
    for (std::size_t k = 0; k < std::min(a.checks.size(), b.checks.size()); ++k) {
      const double d = std::abs(a.checks[k].max - b.checks[k].max);
      worst = std::max(worst, d);
      o.require(d <= 1e-12, ex.name + " " + a.checks[k].name + " after round trip");
    }
  }
  o.detail << " CSV/OBJ/PLY identical for 1 and 3 workers; max residual change after CSV round trip " << fmt(worst);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<void (*)(Outcome&)> all = {c01, c02, c03, c04, c05, c06, c07, c08, c09, c10};
  bool ok = true;
  for (int k = 1; k <= 10; ++k) {
    if (only && k != only) continue;
    Outcome o;
    try {
      all[k - 1](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ":" << o.detail.str() << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
