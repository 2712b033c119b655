#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "ias/weier.hpp"

namespace ias::weier {

namespace {

// Edge of the sample grid: horizontal edges join (i, j)-(i+1, j), vertical
// edges join (i, j)-(i, j+1).
struct EdgeKey {
  int dir;
  int i;
  int j;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct FracPoint {
  double fi;
  double fj;
};

}  // namespace

std::vector<SingularCurve> contour_zero(const DomainSpec& domain, int eps,
                                        const std::vector<double>& field) {
  const int n1 = domain.n1, n2 = domain.n2;
  const bool periodic = domain.kind == DomainKind::annulus;
  auto value = [&](int i, int j) { return field[static_cast<std::size_t>(j) * n1 + i]; };
  auto positive = [&](int i, int j) { return value(i, j) >= 0.0; };

  auto canonical = [&](EdgeKey e) {
    if (periodic && e.dir == 0 && e.j == n2 - 1) e.j = 0;
    return e;
  };

  std::map<EdgeKey, FracPoint> crossing;
  std::map<EdgeKey, std::vector<EdgeKey>> adjacency;

  auto edge_point = [&](const EdgeKey& e) {
    const int i2 = e.dir == 0 ? e.i + 1 : e.i;
    const int j2 = e.dir == 0 ? e.j : e.j + 1;
    const double a = value(e.i, e.j), b = value(i2, j2);
    const double t = a / (a - b);
    return e.dir == 0 ? FracPoint{e.i + t, static_cast<double>(e.j)}
                      : FracPoint{static_cast<double>(e.i), e.j + t};
  };

  auto link = [&](EdgeKey a, EdgeKey b) {
    const EdgeKey ca = canonical(a), cb = canonical(b);
    crossing.try_emplace(ca, edge_point(a));
    crossing.try_emplace(cb, edge_point(b));
    adjacency[ca].push_back(cb);
    adjacency[cb].push_back(ca);
  };

  for (int j = 0; j + 1 < n2; ++j) {
    for (int i = 0; i + 1 < n1; ++i) {
      const EdgeKey bottom{0, i, j}, top{0, i, j + 1}, left{1, i, j}, right{1, i + 1, j};
      const int mask = (positive(i, j) ? 1 : 0) | (positive(i + 1, j) ? 2 : 0) |
                       (positive(i + 1, j + 1) ? 4 : 0) | (positive(i, j + 1) ? 8 : 0);
      switch (mask) {
        case 0:
        case 15:
          break;
        case 1:
        case 14:
          link(left, bottom);
          break;
        case 2:
        case 13:
          link(bottom, right);
          break;
        case 3:
        case 12:
          link(left, right);
          break;
        case 4:
        case 11:
          link(right, top);
          break;
        case 6:
        case 9:
          link(bottom, top);
          break;
        case 7:
        case 8:
          link(left, top);
          break;
        case 5:
        case 10: {
          // Saddle: decide by the cell-centre average.
          const double centre = 0.25 * (value(i, j) + value(i + 1, j) + value(i + 1, j + 1) + value(i, j + 1));
          const bool centre_pos = centre >= 0.0;
          if ((mask == 5) == centre_pos) {
            link(left, top);
            link(bottom, right);
          } else {
            link(left, bottom);
            link(right, top);
          }
          break;
        }
      }
    }
  }

  auto to_point = [&](const FracPoint& f) {
    CurvePoint p;
    p.p1 = domain.p1_min + f.fi * domain.step1();
    p.p2 = domain.p2_min + f.fj * domain.step2();
    p.z = domain.point(p.p1, p.p2, eps);
    return p;
  };

  std::vector<SingularCurve> curves;
  std::map<EdgeKey, bool> used;
  auto walk = [&](EdgeKey start) {
    SingularCurve c;
    EdgeKey cur = start;
    used[start] = true;
    c.points.push_back(to_point(crossing.at(start)));
    while (true) {
      EdgeKey next = cur;
      bool found = false;
      for (const EdgeKey& n : adjacency.at(cur)) {
        if (!used[n]) {
          next = n;
          found = true;
          break;
        }
      }
      if (!found) {
        const auto& adj = adjacency.at(cur);
        c.closed = cur != start && adjacency.at(start).size() == 2 &&
                   std::find(adj.begin(), adj.end(), start) != adj.end();
        break;
      }
      used[next] = true;
      c.points.push_back(to_point(crossing.at(next)));
      cur = next;
    }
    curves.push_back(std::move(c));
  };

  for (const auto& [key, adj] : adjacency)
    if (adj.size() == 1 && !used[key]) walk(key);
  for (const auto& [key, adj] : adjacency)
    if (!used[key]) walk(key);
  return curves;
}

std::vector<SingularCurve> extract_singular_curves(const SurfaceMesh& mesh) {
  std::vector<double> field(mesh.samples.size());
  for (std::size_t k = 0; k < field.size(); ++k) field[k] = mesh.samples[k].h_degeneracy;
  std::vector<SingularCurve> curves = contour_zero(mesh.domain, mesh.eps, field);
  if (!mesh.source) {
    for (auto& c : curves)
      for (auto& p : c.points) p.value = 0.0;
    return curves;
  }
  const WeierstrassData& data = *mesh.source;
  for (auto& c : curves) {
    for (auto& p : c.points) {
      // Minimum-norm Newton steps on the exact degeneracy.
      for (int it = 0; it < 4; ++it) {
        const DegeneracyJet jet = degeneracy_jet(data, p.p1, p.p2);
        p.value = jet.value;
        const double g2 = jet.d1 * jet.d1 + jet.d2 * jet.d2;
        if (std::abs(jet.value) <= 1e-14 * jet.scale || g2 == 0.0) break;
        p.p1 -= jet.value * jet.d1 / g2;
        p.p2 -= jet.value * jet.d2 / g2;
      }
      p.z = mesh.domain.point(p.p1, p.p2, mesh.eps);
      p.value = degeneracy_jet(data, p.p1, p.p2).value;
    }
  }
  return curves;
}

namespace {

double point_segment(double px, double py, const CurvePoint& a, const CurvePoint& b) {
  const double dx = b.p1 - a.p1, dy = b.p2 - a.p2;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - a.p1) * dx + (py - a.p2) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (a.p1 + t * dx), py - (a.p2 + t * dy));
}

double directed(const std::vector<SingularCurve>& a, const std::vector<SingularCurve>& b) {
  double worst = 0.0;
  for (const auto& ca : a) {
    for (const auto& p : ca.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& cb : b) {
        if (cb.points.size() == 1) best = std::min(best, std::hypot(p.p1 - cb.points[0].p1, p.p2 - cb.points[0].p2));
        for (std::size_t k = 1; k < cb.points.size(); ++k)
          best = std::min(best, point_segment(p.p1, p.p2, cb.points[k - 1], cb.points[k]));
        if (cb.closed && cb.points.size() > 2)
          best = std::min(best, point_segment(p.p1, p.p2, cb.points.back(), cb.points.front()));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

double hausdorff(const std::vector<SingularCurve>& a, const std::vector<SingularCurve>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace ias::weier
