#pragma once

// Complex (eps = +1) and split-complex (eps = -1) numbers s + j t with
// j^2 = -eps. One runtime-tagged type serves both algebras so every formula
// downstream is written once.

#include <cmath>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ias/error.hpp"

namespace ias {

class CEps {
 public:
  constexpr CEps() = default;
  constexpr CEps(double re, double im, int eps) : re_(re), im_(im), eps_(eps) {}

  static constexpr CEps real(double x, int eps) { return {x, 0.0, eps}; }
  static constexpr CEps unit_j(int eps) { return {0.0, 1.0, eps}; }

  constexpr double re() const { return re_; }
  constexpr double im() const { return im_; }
  constexpr int eps() const { return eps_; }

  CEps& operator+=(const CEps& o) {
    check(o);
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  CEps& operator-=(const CEps& o) {
    check(o);
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  CEps& operator*=(const CEps& o) {
    check(o);
    const double r = re_ * o.re_ - eps_ * im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    return *this;
  }
  CEps& operator/=(const CEps& o) {
    check(o);
    // a / b = a conj(b) / (b conj(b)); b conj(b) = s^2 + eps t^2 is real.
    const double n = o.re_ * o.re_ + eps_ * o.im_ * o.im_;
    const double scale = o.re_ * o.re_ + o.im_ * o.im_;
    if (scale == 0.0 || std::abs(n) <= 1e-300 + 4.0 * kRoundoff * scale) throw SingularDivisor();
    const double r = (re_ * o.re_ + eps_ * im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = r;
    return *this;
  }
  CEps& operator*=(double x) {
    re_ *= x;
    im_ *= x;
    return *this;
  }
  CEps& operator/=(double x) {
    re_ /= x;
    im_ /= x;
    return *this;
  }

  friend CEps operator+(CEps a, const CEps& b) { return a += b; }
  friend CEps operator-(CEps a, const CEps& b) { return a -= b; }
  friend CEps operator*(CEps a, const CEps& b) { return a *= b; }
  friend CEps operator/(CEps a, const CEps& b) { return a /= b; }
  friend CEps operator*(CEps a, double x) { return a *= x; }
  friend CEps operator*(double x, CEps a) { return a *= x; }
  friend CEps operator/(CEps a, double x) { return a /= x; }
  friend CEps operator+(CEps a, double x) { return {a.re_ + x, a.im_, a.eps_}; }
  friend CEps operator+(double x, CEps a) { return {a.re_ + x, a.im_, a.eps_}; }
  friend CEps operator-(CEps a, double x) { return {a.re_ - x, a.im_, a.eps_}; }
  friend CEps operator-(double x, CEps a) { return {x - a.re_, -a.im_, a.eps_}; }
  CEps operator-() const { return {-re_, -im_, eps_}; }

  friend bool operator==(const CEps& a, const CEps& b) = default;

 private:
  // Relative size below which s^2 + eps t^2 is indistinguishable from zero.
  static constexpr double kRoundoff = 2.220446049250313e-16;

  void check(const CEps& o) const {
    if (eps_ != o.eps_) throw AlgebraMismatch();
  }

  double re_ = 0.0;
  double im_ = 0.0;
  int eps_ = 1;
};

inline CEps conj(const CEps& z) { return {z.re(), -z.im(), z.eps()}; }

/// z conj(z) = s^2 + eps t^2. Negative off the light cone when eps = -1.
inline double mod_sq(const CEps& z) { return z.re() * z.re() + z.eps() * z.im() * z.im(); }

inline double re_part(const CEps& z) { return z.re(); }
inline double im_part(const CEps& z) { return z.im(); }

/// Euclidean length of (s, t); a scale, not an algebra invariant.
inline double euclid(const CEps& z) { return std::hypot(z.re(), z.im()); }

inline bool is_finite(const CEps& z) { return std::isfinite(z.re()) && std::isfinite(z.im()); }

/// exp(s + j t): e^s (cos t + j sin t) for eps = +1, e^s (cosh t + j sinh t) for eps = -1.
inline CEps exp(const CEps& z) {
  const double e = std::exp(z.re());
  if (z.eps() > 0) return {e * std::cos(z.im()), e * std::sin(z.im()), 1};
  return {e * std::cosh(z.im()), e * std::sinh(z.im()), -1};
}

/// Integer power by repeated squaring; negative exponents divide.
CEps pow(const CEps& z, int n);

/// True when eps is +1 or -1.
constexpr bool valid_eps(int eps) { return eps == 1 || eps == -1; }

inline void require_eps(int eps) {
  if (!valid_eps(eps)) throw InvalidParameter("eps must be +1 or -1, got " + std::to_string(eps));
}

/// Parses a literal such as "2", "-1.5", "3j", "j", "1+0j", "0.5-2j".
CEps parse_ceps(std::string_view text, int eps);

/// Shortest round-trip text for a value, in the same literal syntax.
std::string to_string(const CEps& z);

std::ostream& operator<<(std::ostream& os, const CEps& z);

}  // namespace ias
