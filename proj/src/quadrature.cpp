#include "ias/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ias/format.hpp"

namespace ias::quad {

namespace {

using Rule = boost::math::quadrature::gauss<double, 10>;

struct Estimate {
  CEps value;
  double magnitude;  // sum of w |f| |dz|, the scale for tolerances
};

CEps checked(const Integrand& f, const CEps& z) {
  CEps v;
  try {
    v = f(z);
  } catch (const SingularDivisor& e) {
    throw PathSingularity(std::string("path passes through a singularity: ") + e.what());
  }
  if (!is_finite(v)) throw PathSingularity("integrand not finite at z = " + to_string(z));
  return v;
}

// Gauss-Legendre on [a, b]; boost stores the non-negative half of the
// symmetric abscissae (10 nodes, so no centre node).
Estimate rule(const Integrand& f, const CEps& a, const CEps& b) {
  const CEps mid = 0.5 * (a + b);
  const CEps half = 0.5 * (b - a);
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  CEps sum = CEps::real(0.0, a.eps());
  double mag = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      const CEps v = checked(f, mid + (sign * x[k]) * half);
      sum += w[k] * v;
      mag += w[k] * euclid(v);
    }
  }
  return {sum * half, mag * euclid(half)};
}

// abs_tol is fixed by the whole segment's magnitude: local relative
// tolerances cannot be met near poles, where f carries rounding error.
CEps adaptive(const Integrand& f, const CEps& a, const CEps& b, const Estimate& whole,
              double abs_tol, int depth) {
  const CEps m = 0.5 * (a + b);
  const Estimate left = rule(f, a, m);
  const Estimate right = rule(f, m, b);
  const CEps refined = left.value + right.value;
  const double err = euclid(refined - whole.value);
  if (err <= abs_tol || err == 0.0) return refined;
  if (depth >= 40) {
    throw QuadratureError("quadrature did not converge on segment " + to_string(a) + " -> " +
                          to_string(b) + " (error estimate " + format_double(err) + ")");
  }
  return adaptive(f, a, m, left, abs_tol, depth + 1) + adaptive(f, m, b, right, abs_tol, depth + 1);
}

}  // namespace

CEps segment(const Integrand& f, const CEps& a, const CEps& b, double rel_tol) {
  if (a.eps() != b.eps()) throw AlgebraMismatch();
  if (a == b) return CEps::real(0.0, a.eps());
  const Estimate whole = rule(f, a, b);
  return adaptive(f, a, b, whole, rel_tol * std::max(whole.magnitude, 1e-300), 0);
}

CEps circle(const Integrand& f, const CEps& center, double radius, double rel_tol) {
  if (center.eps() != 1) throw InvalidParameter("circle quadrature needs eps = +1");
  auto sample = [&](int n, int k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    const CEps dz{-radius * std::sin(th), radius * std::cos(th), 1};
    const CEps z = center + CEps{radius * std::cos(th), radius * std::sin(th), 1};
    return checked(f, z) * dz;
  };
  int n = 32;
  CEps sum = CEps::real(0.0, 1);
  double mag = 0.0;
  for (int k = 0; k < n; ++k) {
    const CEps v = sample(n, k);
    sum += v;
    mag += euclid(v);
  }
  CEps prev = sum * (2.0 * std::numbers::pi / n);
  while (n < (1 << 20)) {
    // Doubling reuses the previous nodes; only odd nodes are new.
    for (int k = 1; k < 2 * n; k += 2) {
      const CEps v = sample(2 * n, k);
      sum += v;
      mag += euclid(v);
    }
    n *= 2;
    const CEps next = sum * (2.0 * std::numbers::pi / n);
    const double scale = mag * 2.0 * std::numbers::pi / n;
    if (euclid(next - prev) <= rel_tol * std::max(scale, 1e-300)) return next;
    prev = next;
  }
  throw QuadratureError("loop quadrature did not converge at radius " + format_double(radius));
}

}  // namespace ias::quad
