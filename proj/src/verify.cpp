#include "ias/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "ias/format.hpp"
#include "ias/parallel.hpp"

namespace ias::verify {

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& VerificationReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidParameter("report has no check '" + name + "'");
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "check,max,mean,n,tol,pass\n";
  for (const auto& c : checks)
    os << c.name << ',' << format_double(c.max) << ',' << format_double(c.mean) << ',' << c.n << ','
       << format_double(c.tol) << ',' << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "ok   " : "FAIL ") << c.name << ": max " << format_double(c.max) << ", mean "
       << format_double(c.mean) << " over " << c.n << " samples (tol " << format_double(c.tol) << ")";
    if (c.skipped) os << ", " << c.skipped << " skipped";
    if (!c.worst.empty()) os << ", worst at " << c.worst;
    os << '\n';
  }
  os << (passed() ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

double resolution_tolerance(const DomainSpec& d) {
  const int n = std::min(d.n1, d.n2);
  if (n >= 256) return 1e-4;
  if (n >= 128) return 2.5e-4;
  if (n >= 64) return 1e-3;
  return 1e-3 * (64.0 / n) * (64.0 / n);
}

namespace {

std::string location(const Sample& s) {
  return "(" + format_double(s.p1) + ", " + format_double(s.p2) + ")";
}

// Running max/mean with the arg-max, merged across workers.
struct Accumulator {
  double max = 0.0, sum = 0.0;
  long n = 0, skipped = 0;
  std::size_t worst = 0;

  void add(double v, std::size_t k) {
    if (!(v <= max)) {  // also lets NaN through as the max
      max = v;
      worst = k;
    }
    sum += v;
    ++n;
  }
  void merge(const Accumulator& o) {
    if (o.n && (!(o.max <= max) || n == 0)) {
      max = o.max;
      worst = o.worst;
    }
    sum += o.sum;
    n += o.n;
    skipped += o.skipped;
  }
  Check finish(const std::string& name, double tol, const SurfaceMesh& mesh) const {
    Check c;
    c.name = name;
    c.max = max;
    c.mean = n ? sum / n : 0.0;
    c.n = n;
    c.tol = tol;
    c.pass = max <= tol;
    c.skipped = skipped;
    if (n) c.worst = location(mesh.samples[worst]);
    return c;
  }
};

// Per-row accumulators so the result does not depend on scheduling.
template <typename Fn>
std::vector<Accumulator> by_rows(const SurfaceMesh& mesh, int count, Fn&& fn) {
  std::vector<std::vector<Accumulator>> rows(static_cast<std::size_t>(mesh.n2()),
                                             std::vector<Accumulator>(static_cast<std::size_t>(count)));
  parallel_for(static_cast<std::size_t>(mesh.n2()), [&](std::size_t j) { fn(static_cast<int>(j), rows[j]); });
  std::vector<Accumulator> total(static_cast<std::size_t>(count));
  for (const auto& r : rows)
    for (int c = 0; c < count; ++c) total[static_cast<std::size_t>(c)].merge(r[static_cast<std::size_t>(c)]);
  return total;
}

}  // namespace

HessianField hessian_field(const SurfaceMesh& mesh, const HessianOptions& opts) {
  if (opts.k < 5) throw InvalidParameter("quadratic fits need k >= 5 neighbours");
  const int n1 = mesh.n1(), n2 = mesh.n2();

  // Stencil: index offsets sorted by distance, ties at the k-th kept.
  std::vector<std::pair<int, int>> offsets;
  const int w = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(opts.k)))) ;
  for (int dj = -w; dj <= w; ++dj)
    for (int di = -w; di <= w; ++di) offsets.emplace_back(di, dj);
  auto d2 = [](const std::pair<int, int>& o) { return o.first * o.first + o.second * o.second; };
  std::stable_sort(offsets.begin(), offsets.end(), [&](const auto& a, const auto& b) { return d2(a) < d2(b); });
  const int cutoff = d2(offsets[static_cast<std::size_t>(opts.k)]);
  std::erase_if(offsets, [&](const auto& o) { return d2(o) > cutoff; });
  int reach = 1;
  for (const auto& o : offsets) reach = std::max({reach, std::abs(o.first), std::abs(o.second)});
  const double h1 = mesh.domain.step1(), h2 = mesh.domain.step2();


  HessianField field;
  field.residual.assign(mesh.samples.size(), std::numeric_limits<double>::quiet_NaN());
  field.skipped.assign(mesh.samples.size(), 0);
  parallel_for(static_cast<std::size_t>(n2), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    if (j < reach || j >= n2 - reach) return;
    Eigen::MatrixXd M(static_cast<Eigen::Index>(offsets.size()), 6);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(offsets.size()));
    for (int i = reach; i < n1 - reach; ++i) {
      const Sample& c = mesh.at(i, j);
      if (c.singular) continue;
      bool usable = true;
      double L = 0.0;
      for (const auto& [di, dj] : offsets) {
        const Sample& s = mesh.at(i + di, j + dj);
        if (s.singular || (s.h_degeneracy > 0) != (c.h_degeneracy > 0)) usable = false;
        L = std::max(L, std::hypot(s.psi.x() - c.psi.x(), s.psi.y() - c.psi.y()));
      }
      // Singular-value ratio of the planar Jacobian per unit |dz|: zero on
      // folds, and independent of the grid step and of the grid's aspect.
      const auto [t1, t2] = mesh.domain.tangents(c.p1, c.p2, mesh.eps);
      const double j11 = (mesh.at(i + 1, j).psi.x() - mesh.at(i - 1, j).psi.x()) / (2 * h1 * euclid(t1));
      const double j21 = (mesh.at(i + 1, j).psi.y() - mesh.at(i - 1, j).psi.y()) / (2 * h1 * euclid(t1));
      const double j12 = (mesh.at(i, j + 1).psi.x() - mesh.at(i, j - 1).psi.x()) / (2 * h2 * euclid(t2));
      const double j22 = (mesh.at(i, j + 1).psi.y() - mesh.at(i, j - 1).psi.y()) / (2 * h2 * euclid(t2));
      const double fro = 0.5 * (j11 * j11 + j12 * j12 + j21 * j21 + j22 * j22);
      const double det = std::abs(j11 * j22 - j12 * j21);
      // sigma_min / sigma_max from det = s1 s2 and fro = (s1^2 + s2^2) / 2.
      const double disc = std::sqrt(std::max(fro * fro - det * det, 0.0));
      const double graph_ratio = fro > 0.0 ? std::sqrt(std::max(fro - disc, 0.0) / (fro + disc)) : 0.0;
      if (!usable || L == 0.0 || graph_ratio < opts.min_graph_ratio) {
        field.skipped[static_cast<std::size_t>(j) * n1 + i] = 1;
        continue;
      }
      Eigen::Index r = 0;
      for (const auto& [di, dj] : offsets) {
        const Sample& s = mesh.at(i + di, j + dj);
        const double X = (s.psi.x() - c.psi.x()) / L, Y = (s.psi.y() - c.psi.y()) / L;
        M.row(r) << 1.0, X, Y, X * X, X * Y, Y * Y;
        rhs(r) = s.psi.z() - c.psi.z();
        ++r;
      }
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      if (sv(5) < 1e-8 * sv(0)) {
        field.skipped[static_cast<std::size_t>(j) * n1 + i] = 1;
        continue;
      }
      const Eigen::VectorXd cf = svd.solve(rhs);
      const double L4 = L * L * L * L;
      const double hess = (4.0 * cf(3) * cf(5) - cf(4) * cf(4)) / L4;
      field.residual[static_cast<std::size_t>(j) * n1 + i] = std::abs(hess - mesh.eps);
    }
  });
  return field;
}

VerificationReport hessian_residual(const SurfaceMesh& mesh, const HessianOptions& opts) {
  const HessianField field = hessian_field(mesh, opts);
  Accumulator acc;
  for (std::size_t k = 0; k < field.residual.size(); ++k) {
    if (field.skipped[k]) ++acc.skipped;
    if (!std::isnan(field.residual[k])) acc.add(field.residual[k], k);
  }
  const double tol = opts.tol.value_or(resolution_tolerance(mesh.domain));
  VerificationReport rep;
  rep.checks.push_back(acc.finish("hessian", tol, mesh));
  return rep;
}

namespace {

double det2(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }  // det[a, b, xi]

// C_eps product a * conj(b), imaginary part.
double im_mul_conj(double ar, double ai, double br, double bi) { return ai * br - ar * bi; }

}  // namespace

VerificationReport structure_residuals(const SurfaceMesh& mesh, std::optional<double> tol_override) {
  const int n1 = mesh.n1(), n2 = mesh.n2();
  if (n1 < 3 || n2 < 3) throw InvalidParameter("structure residuals need at least 3 x 3 samples");
  const double tol = tol_override.value_or(resolution_tolerance(mesh.domain));
  const double h1 = mesh.domain.step1(), h2 = mesh.domain.step2();
  const int eps = mesh.eps;
  enum { conormal, metric, det_signed, det_abs, metric_ab, count };

  const auto acc = by_rows(mesh, count, [&](int j, std::vector<Accumulator>& out) {
    if (j < 1 || j >= n2 - 1) return;
    for (int i = 1; i < n1 - 1; ++i) {
      const Sample& c = mesh.at(i, j);
      const std::size_t k = static_cast<std::size_t>(j) * n1 + i;
      if (c.singular) {
        for (auto& a : out) ++a.skipped;
        continue;
      }
      const Sample &e = mesh.at(i + 1, j), &wv = mesh.at(i - 1, j), &nn = mesh.at(i, j + 1), &s = mesh.at(i, j - 1);
      const Vec3 p1 = (e.psi - wv.psi) / (2 * h1), p2 = (nn.psi - s.psi) / (2 * h2);
      const Vec3 N1 = (e.N - wv.N) / (2 * h1), N2 = (nn.N - s.N) / (2 * h2);
      const Vec3& N = c.N;

      // Sample-wide scales; per-direction norms vanish on fold curves.
      const double sp = std::max(p1.norm(), p2.norm()), sn = std::max(N1.norm(), N2.norm());
      const double bilinear = 0.5 * (sp * sp + sn * sn);

      out[conormal].add(std::max(std::abs(N.dot(p1)), std::abs(N.dot(p2))) / (N.norm() * sp), k);

      const double rE = std::abs(c.hE + N1.dot(p1));
      const double rG = std::abs(c.hG + N2.dot(p2));
      const double rF = std::abs(c.hF + 0.5 * (N1.dot(p2) + N2.dot(p1)));
      out[metric].add(std::max({rE, rF, rG}) / bilinear, k);

      const double dpsi = det2(p1, p2);
      const double dN = N1.x() * N2.y() - N1.y() * N2.x();  // det[N_1, N_2, N] with N_3 = 1, N_a3 = 0
      out[det_signed].add(std::abs(dpsi - eps * dN) / bilinear, k);
      const double deth = c.hE * c.hG - c.hF * c.hF;
      out[det_abs].add(std::abs(std::abs(dpsi) - std::sqrt(std::abs(deth))) / bilinear, k);

      // A = -u_y + j x = N_2 + j x, B = u_x + j y = -N_1 + j y; h_ab = Im(A_a conj(B_b)).
      const double A1r = N1.y(), A1i = p1.x(), A2r = N2.y(), A2i = p2.x();
      const double B1r = -N1.x(), B1i = p1.y(), B2r = -N2.x(), B2i = p2.y();
      const double eE = im_mul_conj(A1r, A1i, B1r, B1i);
      const double eG = im_mul_conj(A2r, A2i, B2r, B2i);
      const double eF = 0.5 * (im_mul_conj(A1r, A1i, B2r, B2i) + im_mul_conj(A2r, A2i, B1r, B1i));
      out[metric_ab].add(std::max({std::abs(c.hE - eE), std::abs(c.hF - eF), std::abs(c.hG - eG)}) / bilinear, k);
    }
  });

  VerificationReport rep;
  const char* names[] = {"conormal", "metric", "det_signed", "det_abs", "metric_AB"};
  for (int c = 0; c < count; ++c) rep.checks.push_back(acc[static_cast<std::size_t>(c)].finish(names[c], tol, mesh));

  // Height from 1/2|G|^2 - 1/2|F|^2 + 2 Re int G d conj(F) along the base
  // row then the columns (trapezoid rule), compared with the mesh height up
  // to a constant. Reported, never failed.
  {
    auto GF = [&](const Sample& s) {
      const CEps X{s.psi.x(), s.psi.y(), eps};
      const CEps W{s.N.x(), eps * s.N.y(), eps};
      return std::pair{(X - W) * 0.5, (X + W) * 0.5};  // G, conj(F)
    };
    std::vector<double> integral(mesh.samples.size(), 0.0);
    auto step = [&](const Sample& a, const Sample& b) {
      const auto [Ga, Fa] = GF(a);
      const auto [Gb, Fb] = GF(b);
      return ((Ga + Gb) * 0.5 * (Fb - Fa)).re();
    };
    for (int i = 1; i < n1; ++i) integral[i] = integral[i - 1] + step(mesh.at(i - 1, 0), mesh.at(i, 0));
    for (int j = 1; j < n2; ++j)
      for (int i = 0; i < n1; ++i)
        integral[static_cast<std::size_t>(j) * n1 + i] =
            integral[static_cast<std::size_t>(j - 1) * n1 + i] + step(mesh.at(i, j - 1), mesh.at(i, j));
    Accumulator a;
    double offset = 0.0;
    for (std::size_t k = 0; k < mesh.samples.size(); ++k) {
      const auto [G, Fc] = GF(mesh.samples[k]);
      const double u13 = 0.5 * mod_sq(G) - 0.5 * mod_sq(Fc) + 2.0 * integral[k];
      const double diff = u13 - mesh.samples[k].psi.z();
      if (k == 0) offset = diff;
      a.add(std::abs(diff - offset), k);
    }
    rep.checks.push_back(a.finish("height_13", std::numeric_limits<double>::infinity(), mesh));
  }
  return rep;
}

VerificationReport verify_mesh(const SurfaceMesh& mesh, std::optional<double> hessian_tol,
                               std::optional<double> structure_tol) {
  HessianOptions ho;
  ho.tol = hessian_tol;
  VerificationReport rep = hessian_residual(mesh, ho);
  rep.append(structure_residuals(mesh, structure_tol));
  return rep;
}

AsymptoticFit asymptotic_fit(const SurfaceMesh& mesh, double far_fraction) {
  const DomainSpec& d = mesh.domain;
  if (d.kind != DomainKind::annulus) throw InvalidParameter("asymptotic fits need an annulus mesh");
  if (!(far_fraction > 0.0 && far_fraction <= 1.0)) throw InvalidParameter("far_fraction must lie in (0, 1]");
  const double r_cut = d.r_out() - far_fraction * (d.r_out() - d.r_in());
  std::vector<const Sample*> band;
  for (int j = 0; j + 1 < d.n2; ++j)  // the seam row repeats row 0
    for (int i = 0; i < d.n1; ++i)
      if (std::exp(d.p1(i)) >= r_cut * (1 - 1e-12)) band.push_back(&mesh.at(i, j));
  double L = 0.0;
  for (const Sample* s : band) L = std::max(L, std::hypot(s->psi.x(), s->psi.y()));
  if (band.size() < 7 || L == 0.0) throw FitDegenerate("too few far-field samples for the fit");

  Eigen::MatrixXd M(static_cast<Eigen::Index>(band.size()), 7);
  Eigen::VectorXd u(static_cast<Eigen::Index>(band.size()));
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    const Sample& s = *band[static_cast<std::size_t>(r)];
    const double x = s.psi.x() / L, y = s.psi.y() / L;
    const double q = x * x + y * y;
    if (q == 0.0) throw FitDegenerate("far-field sample at the planar origin");
    M.row(r) << 1.0, x, y, x * x, x * y, y * y, std::log(q);
    u(r) = s.psi.z();
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  if (qr.rank() < 7) throw FitDegenerate("far-field design matrix has rank " + std::to_string(qr.rank()) + " < 7");
  const Eigen::VectorXd c = qr.solve(u);
  AsymptoticFit fit;
  fit.samples = static_cast<int>(band.size());
  fit.residual = (M * c - u).norm() / std::max(u.norm(), std::numeric_limits<double>::min());
  // Undo the scaling; log(q) = log(x^2 + y^2) - 2 log L.
  fit.a = c(6);
  fit.E = {c(0) - 2.0 * std::log(L) * c(6), c(1) / L, c(2) / L, c(3) / (L * L), c(4) / (L * L), c(5) / (L * L)};
  return fit;
}

}  // namespace ias::verify
