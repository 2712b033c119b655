#include "ias/ribaucour.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "ias/format.hpp"
#include "ias/parallel.hpp"

namespace ias::ribaucour {

using holo::Expr;

namespace {

constexpr double pi = std::numbers::pi;

std::complex<double> to_complex(const CEps& z) { return {z.re(), z.im()}; }

}  // namespace

HelicoidalClosedForm HelicoidalClosedForm::from_ac(double a, double c, CEps k) {
  HelicoidalClosedForm p;
  p.a = a;
  p.c = c;
  p.k = k;
  const double disc = 1.0 + 4.0 * a * a * c;
  if (!(disc > 0.0)) throw InvalidParameter("1 + 4 a^2 c must be positive, got " + format_double(disc));
  p.b = std::sqrt(disc);
  p.validate();
  return p;
}

HelicoidalClosedForm HelicoidalClosedForm::from_ab(double a, double b, CEps k) {
  if (a == 0.0) throw InvalidParameter("a must be nonzero");
  HelicoidalClosedForm p;
  p.a = a;
  p.b = b;
  p.c = (b * b - 1.0) / (4.0 * a * a);
  p.k = k;
  p.validate();
  return p;
}

HelicoidalClosedForm HelicoidalClosedForm::from_nm(double a, int n, int m, CEps k) {
  if (n <= 0 || m <= 0) throw InvalidParameter("n and m must be positive integers");
  const int g = std::gcd(n, m);
  return from_ab(a, static_cast<double>(n / g) / static_cast<double>(m / g), k);
}

void HelicoidalClosedForm::validate() const {
  if (a == 0.0 || !std::isfinite(a)) throw InvalidParameter("a must be a nonzero real");
  if (c == 0.0 || !std::isfinite(c)) throw InvalidParameter("c must be a nonzero real (b != 1)");
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidParameter("b must be positive");
  if (k.eps() != 1) throw InvalidParameter("the helicoidal transform is defined for eps = +1");
  if (std::abs(b * b - (1.0 + 4.0 * a * a * c)) > 1e-12 * (1.0 + b * b))
    throw InvalidParameter("b^2 != 1 + 4 a^2 c");
}

Expr closed_form_expr(const HelicoidalClosedForm& p) {
  p.validate();
  const Expr z = Expr::variable(1);
  const Expr scale = Expr::constant(1.0 / (2.0 * p.a * p.c), 1);
  if (p.k == CEps{0, 0, 1}) return Expr::constant(1.0 + p.b, 1) * scale * exp(z);
  const Expr kebz = Expr::constant(p.k) * exp(Expr::constant(p.b, 1) * z);
  const Expr num = Expr::constant(1.0 + p.b, 1) + Expr::constant(1.0 - p.b, 1) * kebz;
  const Expr den = Expr::constant(1.0, 1) + kebz;
  return scale * exp(z) * num / den;
}

CEps closed_form_R(const HelicoidalClosedForm& p, const CEps& z) {
  p.validate();
  if (z.eps() != 1) throw AlgebraMismatch();
  const CEps kebz = p.k * exp(p.b * z);
  const CEps den = 1.0 + kebz;
  if (euclid(den) <= 1e-12 * (1.0 + euclid(kebz)))
    throw PoleError("R has a pole at z = " + to_string(z) + " (1 + k e^{bz} = 0)");
  const CEps num = (1.0 + p.b) + (1.0 - p.b) * kebz;
  return exp(z) / (2.0 * p.a * p.c) * num / den;
}

double closed_form_residual(const HelicoidalClosedForm& p, const CEps& z) {
  const Expr R = closed_form_expr(p);
  const CEps r = closed_form_R(p, z);
  const CEps dR = R.derive().eval(z);
  const CEps dG = p.a * exp(z);
  const CEps dF = p.a * exp(-z);
  return euclid(dR + dG - p.c * r * r * dF);
}

weier::WeierstrassData helicoidal_data(const HelicoidalClosedForm& p, const DomainSpec& domain) {
  p.validate();
  const Expr z = Expr::variable(1);
  return weier::WeierstrassData(Expr::constant(p.a, 1) * exp(z), Expr::constant(-p.a, 1) * exp(-z), domain,
                                "helicoidal a=" + format_double(p.a));
}

namespace {

// Solutions of e^{bz} = w with s in [s0, s1], t in [t0, t1].
void log_branches(double b, std::complex<double> w, double s0, double s1, double t0, double t1,
                  std::vector<CEps>& out) {
  const double s = std::log(std::abs(w)) / b;
  if (s < s0 || s > s1) return;
  const double base = std::arg(w) / b, period = 2.0 * pi / b;
  const long lo = static_cast<long>(std::ceil((t0 - base) / period - 1e-12));
  const long hi = static_cast<long>(std::floor((t1 - base) / period + 1e-12));
  for (long l = lo; l <= hi; ++l) {
    const double t = base + l * period;
    if (t >= t0 && t <= t1) out.push_back({s, t, 1});
  }
}

}  // namespace

Punctures closed_form_punctures(const HelicoidalClosedForm& p, double s0, double s1, double t0, double t1) {
  Punctures out;
  const std::complex<double> k = to_complex(p.k);
  if (k == 0.0) return out;
  log_branches(p.b, -1.0 / k, s0, s1, t0, t1, out.poles);
  if (p.b != 1.0) log_branches(p.b, -(1.0 + p.b) / ((1.0 - p.b) * k), s0, s1, t0, t1, out.zeros);
  return out;
}

DomainSpec default_domain(int n, int m, int n1, int n2) {
  if (n <= 0 || m <= 0) throw InvalidParameter("n and m must be positive integers");
  const double t0 = -pi * m / (2.0 * n);
  DomainSpec d = DomainSpec::rectangle(-3.0, 3.0, t0, t0 + 2.0 * pi * m, n1, n2);
  d.guard_radius = 0.2 * std::min(d.step1(), d.step2());
  return d;
}

DomainSpec default_domain(const HelicoidalClosedForm& p, int n, int m, int n1, int n2) {
  DomainSpec d = default_domain(n, m, n1, n2);
  const std::complex<double> k = to_complex(p.k);
  if (k == 0.0) return d;
  // Punctures sit on two vertical lines. Move the s grid so that its columns
  // fall in the middle of the widest gap between the lines' phases; every
  // puncture is then at least a quarter step from a column.
  const double h = d.step1();
  std::vector<double> phase;
  for (double w : {std::abs(-1.0 / k), std::abs((1.0 + p.b) / ((1.0 - p.b) * k))}) {
    const double f = (std::log(w) / p.b - d.p1_min) / h;
    phase.push_back(f - std::floor(f));
  }
  std::sort(phase.begin(), phase.end());
  phase.push_back(phase.front() + 1.0);
  double best_gap = -1.0, shift = 0.0;
  for (std::size_t i = 0; i + 1 < phase.size(); ++i)
    if (phase[i + 1] - phase[i] > best_gap) {
      best_gap = phase[i + 1] - phase[i];
      shift = 0.5 * (phase[i] + phase[i + 1]);
    }
  shift -= std::floor(shift);
  if (shift > 0.5) shift -= 1.0;
  d.p1_min += shift * h;
  d.p1_max += shift * h;
  return d;
}

// ----------------------------------------------------------- numerical path

void RiccatiParams::validate() const {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidParameter("c must be a nonzero real");
  if (G.eps() != F.eps() || z_init.eps() != G.eps() || R_init.eps() != G.eps()) throw AlgebraMismatch();
  if (euclid(R_init) == 0.0) throw InvalidParameter("R_init must be nonzero");
  if (!(blowup_cap > 0.0)) throw InvalidParameter("blow-up cap must be positive");
}

namespace {

struct Rk4 {
  const RiccatiParams& p;
  Expr dG, dF;

  explicit Rk4(const RiccatiParams& params) : p(params), dG(params.G.derive()), dF(params.F.derive()) {}

  CEps rhs(const CEps& z, const CEps& R) const { return p.c * R * R * dF.eval(z) - dG.eval(z); }

  CEps step(const CEps& z, const CEps& R, const CEps& h) const {
    const CEps k1 = h * rhs(z, R);
    const CEps k2 = h * rhs(z + 0.5 * h, R + 0.5 * k1);
    const CEps k3 = h * rhs(z + 0.5 * h, R + 0.5 * k2);
    const CEps k4 = h * rhs(z + h, R + k3);
    const CEps next = R + (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    if (!is_finite(next) || euclid(next) > p.blowup_cap)
      throw BlowUpError("|R| exceeded " + format_double(p.blowup_cap) + " near z = " + to_string(z + h) +
                        " (pole of R)");
    return next;
  }

  CEps leg(const CEps& a, const CEps& b, CEps R, int steps) const {
    const CEps h = (b - a) / static_cast<double>(steps);
    for (int k = 0; k < steps; ++k) R = step(a + static_cast<double>(k) * h, R, h);
    return R;
  }
};

}  // namespace

RiccatiSolution riccati_integrate(const RiccatiParams& p, const std::vector<CEps>& path, int steps) {
  p.validate();
  if (steps < 1) throw InvalidParameter("step count must be positive");
  if (path.empty()) throw InvalidParameter("empty path");
  const Rk4 rk(p);
  RiccatiSolution sol;
  sol.z.push_back(path.front());
  sol.R.push_back(p.R_init);
  CEps R = p.R_init;
  if (euclid(path.front() - p.z_init) > 0.0) R = rk.leg(p.z_init, path.front(), R, steps);
  sol.R.front() = R;
  for (std::size_t leg = 1; leg < path.size(); ++leg) {
    const CEps a = path[leg - 1], b = path[leg];
    const CEps h = (b - a) / static_cast<double>(steps);
    for (int k = 0; k < steps; ++k) {
      const CEps z = a + static_cast<double>(k) * h;
      R = rk.step(z, R, h);
      sol.z.push_back(k + 1 == steps ? b : z + h);
      sol.R.push_back(R);
    }
  }
  return sol;
}

std::vector<CEps> riccati_grid(const RiccatiParams& p, const DomainSpec& d, int substeps) {
  p.validate();
  if (d.kind != DomainKind::rectangle) throw InvalidParameter("Riccati grids are rectangles");
  d.validate(p.G.eps());
  const int eps = p.G.eps(), n1 = d.n1, n2 = d.n2;
  auto idx = [n1](int i, int j) { return static_cast<std::size_t>(j) * n1 + i; };
  auto nearest = [](double v, double lo, double step, int n) {
    return static_cast<int>(std::clamp<long>(std::lround((v - lo) / step), 0, n - 1));
  };
  const int ib = nearest(p.z_init.re(), d.p1_min, d.step1(), n1);
  const int jb = nearest(p.z_init.im(), d.p2_min, d.step2(), n2);
  const Rk4 rk(p);
  auto z = [&](int i, int j) { return d.point(d.p1(i), d.p2(j), eps); };
  std::vector<CEps> R(static_cast<std::size_t>(n1) * n2);
  R[idx(ib, jb)] = rk.leg(p.z_init, z(ib, jb), p.R_init, substeps);
  for (int i = ib + 1; i < n1; ++i) R[idx(i, jb)] = rk.leg(z(i - 1, jb), z(i, jb), R[idx(i - 1, jb)], substeps);
  for (int i = ib - 1; i >= 0; --i) R[idx(i, jb)] = rk.leg(z(i + 1, jb), z(i, jb), R[idx(i + 1, jb)], substeps);
  parallel_for(static_cast<std::size_t>(n1), [&](std::size_t col) {
    const int i = static_cast<int>(col);
    for (int j = jb + 1; j < n2; ++j) R[idx(i, j)] = rk.leg(z(i, j - 1), z(i, j), R[idx(i, j - 1)], substeps);
    for (int j = jb - 1; j >= 0; --j) R[idx(i, j)] = rk.leg(z(i, j + 1), z(i, j), R[idx(i, j + 1)], substeps);
  });
  return R;
}

// ---------------------------------------------------------------- transform

weier::WeierstrassData transform_data(const weier::WeierstrassData& data, const Expr& R, double c,
                                      const std::vector<CEps>& punctures, double riccati_tol) {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidParameter("c must be a nonzero real");
  if (R.eps() != data.eps) throw AlgebraMismatch();
  const DomainSpec& d = data.domain;
  const Expr dR = R.derive();
  double worst = 0.0;
  CEps where;
  for (int j = 0; j < d.n2; ++j) {
    for (int i = 0; i < d.n1; ++i) {
      const CEps z = d.point(d.p1(i), d.p2(j), data.eps);
      try {
        const CEps r = R.eval(z), dr = dR.eval(z), g1 = data.dG.eval(z), f1 = data.dF.eval(z);
        const CEps rhs = c * r * r * f1;
        const double scale = euclid(dr) + euclid(g1) + euclid(rhs);
        if (scale == 0.0) continue;
        const double res = euclid(dr + g1 - rhs) / scale;
        if (res > worst) {
          worst = res;
          where = z;
        }
      } catch (const SingularDivisor&) {
        // zero or pole of R: an end of the transform
      }
    }
  }
  if (worst > riccati_tol)
    throw RiccatiViolation("R does not solve R' + G' = c R^2 F' (relative residual " + format_double(worst) +
                           " at z = " + to_string(where) + ")");
  const Expr inv = Expr::constant(1.0 / c, data.eps) / R;
  weier::WeierstrassData out(data.G + R, data.F + inv, data.domain,
                             "ribaucour(" + (data.name.empty() ? std::string("data") : data.name) +
                                 ", c=" + format_double(c) + ")");
  out.punctures = data.punctures;
  out.punctures.insert(out.punctures.end(), punctures.begin(), punctures.end());
  return out;
}

HelicoidalPair helicoidal_transform(const HelicoidalClosedForm& p, const DomainSpec& domain) {
  if (domain.kind != DomainKind::rectangle) throw InvalidParameter("helicoidal transforms use rectangle grids");
  weier::WeierstrassData base = helicoidal_data(p, domain);
  const Punctures pts = closed_form_punctures(p, domain.p1_min, domain.p1_max, domain.p2_min, domain.p2_max);
  std::vector<CEps> all = pts.zeros;
  all.insert(all.end(), pts.poles.begin(), pts.poles.end());
  weier::WeierstrassData tr = transform_data(base, closed_form_expr(p), p.c, all);
  return {p, std::move(base), std::move(tr), pts};
}

double nodal_function(const weier::WeierstrassData& base, const Expr& R, double c, const CEps& z) {
  const CEps r = R.eval(z);
  const double r2 = mod_sq(r);
  return std::log(std::sqrt(std::abs(mod_sq(base.dG.eval(z))))) -
         std::log(c * c * r2 * r2 * std::sqrt(std::abs(mod_sq(base.dF.eval(z)))));
}

ProductIdentity product_identity(const weier::WeierstrassData& base, const weier::WeierstrassData& tr) {
  ProductIdentity out;
  const DomainSpec& d = base.domain;
  for (int j = 0; j < d.n2; ++j) {
    for (int i = 0; i < d.n1; ++i) {
      const CEps z = d.point(d.p1(i), d.p2(j), base.eps);
      const CEps g = base.dG.eval(z), f = base.dF.eval(z);
      const CEps gt = tr.dG.eval(z), ft = tr.dF.eval(z);
      const double scale = euclid(gt) * euclid(ft) + euclid(g) * euclid(f);
      out.max_residual = std::max(out.max_residual, euclid(gt * ft - g * f) / scale);
      ++out.samples;
    }
  }
  return out;
}

GFunction g_function(const SurfaceMesh& base, const SurfaceMesh& tr, const Expr& R, double c) {
  if (base.samples.size() != tr.samples.size()) throw InvalidParameter("meshes have different grids");
  GFunction out;
  for (std::size_t k = 0; k < base.samples.size(); ++k) {
    const Sample& s0 = base.samples[k];
    const Sample& s1 = tr.samples[k];
    const CEps dpsi{s1.psi.x() - s0.psi.x(), s1.psi.y() - s0.psi.y(), 1};
    const CEps dN{s0.N.x() - s1.N.x(), s0.N.y() - s1.N.y(), 1};
    if (euclid(dN) <= 1e-6 * euclid(dpsi)) continue;  // g has a pole where c|R|^2 = 1
    const CEps g = dpsi / dN;
    const double scale = 1.0 + std::abs(g.re());
    out.max_imag = std::max(out.max_imag, std::abs(g.im()) / scale);
    if (std::abs(dN.re()) > 1e-3 * euclid(dN) && std::abs(dN.im()) > 1e-3 * euclid(dN)) {
      const double gx = dpsi.re() / dN.re(), gy = dpsi.im() / dN.im();
      out.max_component_gap = std::max(out.max_component_gap, std::abs(gx - gy) / scale);
    }
    const double t = c * mod_sq(R.eval(s0.z));
    out.max_formula_gap = std::max(out.max_formula_gap, std::abs(g.re() - (t + 1.0) / (t - 1.0)) / scale);
    ++out.samples;
  }
  return out;
}

namespace {

// Zeros of an entire function inside a rectangle: winding number of f
// along the boundary, with adaptive subdivision so no step turns by more
// than half a radian.
int count_zeros(const std::function<std::complex<double>(std::complex<double>)>& f, double s0, double s1,
                double t0, double t1) {
  const std::complex<double> corners[] = {{s0, t0}, {s1, t0}, {s1, t1}, {s0, t1}, {s0, t0}};
  double total = 0.0;
  std::function<double(std::complex<double>, std::complex<double>, std::complex<double>, std::complex<double>,
                       int)>
      turn = [&](std::complex<double> a, std::complex<double> b, std::complex<double> fa,
                 std::complex<double> fb, int depth) -> double {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < 0.5 || depth > 40) return d;
    const std::complex<double> m = 0.5 * (a + b), fm = f(m);
    return turn(a, m, fa, fm, depth + 1) + turn(m, b, fm, fb, depth + 1);
  };
  for (int side = 0; side < 4; ++side) {
    const int pieces = 256;
    for (int k = 0; k < pieces; ++k) {
      const std::complex<double> a = corners[side] + (corners[side + 1] - corners[side]) * (double(k) / pieces);
      const std::complex<double> b =
          corners[side] + (corners[side + 1] - corners[side]) * (double(k + 1) / pieces);
      total += turn(a, b, f(a), f(b), 0);
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

std::optional<std::pair<int, int>> rationalize(double b) {
  for (int m = 1; m <= 64; ++m) {
    const double n = std::round(b * m);
    if (n >= 1 && std::abs(n / m - b) <= 1e-12 * b && std::gcd(static_cast<int>(n), m) == 1)
      return std::pair<int, int>{static_cast<int>(n), m};
  }
  return std::nullopt;
}

}  // namespace

TransformDiagnostics analyze_transform(const SurfaceMesh& base, const SurfaceMesh& tr,
                                       const HelicoidalClosedForm& p, std::optional<std::pair<int, int>> nm) {
  p.validate();
  const DomainSpec& d = tr.domain;
  if (d.kind != DomainKind::rectangle || base.samples.size() != tr.samples.size())
    throw InvalidParameter("analysis needs base and transformed meshes on one rectangle grid");
  TransformDiagnostics out;
  const Expr R = closed_form_expr(p);
  const weier::WeierstrassData data = helicoidal_data(p, d);

  // (i) ends
  out.punctures = closed_form_punctures(p, d.p1_min, d.p1_max, d.p2_min, d.p2_max);
  const std::complex<double> k = to_complex(p.k);
  const double b = p.b;
  out.poles_counted = count_zeros([&](std::complex<double> z) { return 1.0 + k * std::exp(b * z); }, d.p1_min,
                                  d.p1_max, d.p2_min, d.p2_max);
  out.zeros_counted = count_zeros(
      [&](std::complex<double> z) { return (1.0 + b) + (1.0 - b) * k * std::exp(b * z); }, d.p1_min, d.p1_max,
      d.p2_min, d.p2_max);

  // (ii) nodal set against the singular set
  std::vector<double> phi(tr.samples.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = nodal_function(data, R, p.c, tr.samples[i].z);
  const auto nodal = weier::contour_zero(d, 1, phi);
  const auto singular = weier::extract_singular_curves(tr);
  out.nodal_curves = static_cast<int>(nodal.size());
  out.singular_curves = static_cast<int>(singular.size());
  out.nodal_hausdorff = weier::hausdorff(nodal, singular);
  out.nodal_tolerance = 2.0 * std::max(d.step1(), d.step2());

  // (iii) periodicity
  if (!nm) {
    nm = rationalize(b);
    if (!nm) out.notices.push_back("b = " + format_double(b) + " is not n/m with m <= 64; periodicity skipped");
  } else if (std::abs(static_cast<double>(nm->first) / nm->second - b) > 1e-12 * b) {
    out.notices.push_back("b does not equal n/m; periodicity skipped");
    nm.reset();
  }
  if (nm) {
    const int n = nm->first, m = nm->second;
    if (k != 0.0 && p.b != 1.0) out.expected_ends = 2 * n;
    else if (k != 0.0) out.expected_ends = n;
    else out.expected_ends = 0;
    const double shift = 2.0 * pi * m / d.step2();
    const long offset = std::lround(shift);
    if (std::abs(shift - offset) > 1e-6 || offset >= d.n2 || offset < 1) {
      out.notices.push_back("t-grid does not contain a shift by 2 m pi; translation check skipped");
    } else {
      std::vector<Vec3> shifts;
      for (int j = 0; j + offset < d.n2; ++j)
        for (int i = 0; i < d.n1; ++i) shifts.push_back(tr.at(i, static_cast<int>(j + offset)).psi - tr.at(i, j).psi);
      Vec3 mean = Vec3::Zero();
      for (const Vec3& v : shifts) mean += v;
      mean /= static_cast<double>(shifts.size());
      double var = 0.0;
      for (const Vec3& v : shifts) var += (v - mean).squaredNorm();
      out.translation = std::array<double, 3>{mean.x(), mean.y(), mean.z()};
      out.translation_std = std::sqrt(var / static_cast<double>(shifts.size()));
    }
  }

  if (tr.source) out.product = product_identity(data, *tr.source);
  out.g = g_function(base, tr, R, p.c);
  return out;
}

}  // namespace ias::ribaucour
