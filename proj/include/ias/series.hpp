#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "ias/cnum.hpp"

namespace ias::holo {

/// Truncated real power series sum_k c_k (s - center)^k.
///
/// The trust radius bounds where the series may be evaluated or extended.
/// Unless given explicitly it is 0.75 times the convergence radius
/// estimated from the two highest nonzero coefficients (ratio test);
/// series with fewer than two nonzero coefficients get an infinite radius.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(double center, std::vector<double> coeffs,
              std::optional<double> trust_radius = std::nullopt);

  double center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double trust_radius() const { return trust_; }

  /// Value at a real argument; throws TrustRadiusError outside the trust radius.
  double eval(double s) const;
  /// k-th derivative at a real argument.
  double eval_derivative(double s, int k) const;

  PowerSeries derivative() const;

  /// Holomorphic extension to z in C_eps: Taylor sum for eps = +1, and for
  /// eps = -1 the d'Alembert form (c(u)+c(v))/2 + j (c(u)-c(v))/2 with
  /// u = s + t, v = s - t.
  CEps extend(const CEps& z) const;

 private:
  double horner(double s) const;
  void check_radius(double distance) const;

  double center_ = 0.0;
  std::vector<double> coeffs_{0.0};
  double trust_ = std::numeric_limits<double>::infinity();
};

/// Convergence radius estimate used for the default trust radius.
double ratio_test_radius(const std::vector<double>& coeffs);

using Triple = std::array<double, 3>;

/// R^3-valued truncated series: three components sharing one expansion point.
class CurveSeries {
 public:
  CurveSeries() = default;
  CurveSeries(double center, const std::vector<Triple>& coeffs,
              std::optional<double> trust_radius = std::nullopt);
  explicit CurveSeries(std::array<PowerSeries, 3> components);

  double center() const { return comp_[0].center(); }
  int order() const { return comp_[0].order(); }
  const PowerSeries& component(int k) const { return comp_[static_cast<std::size_t>(k)]; }
  double trust_radius() const;

  Triple eval(double s) const;
  Triple eval_derivative(double s, int k) const;
  CurveSeries derivative() const;

 private:
  std::array<PowerSeries, 3> comp_;
};

/// Componentwise holomorphic extension of a curve to z.
std::array<CEps, 3> series_compose(const CurveSeries& curve, const CEps& z);

/// Planar curve, e.g. the harmonic curves of the characteristic problem.
class PlanarSeries {
 public:
  PlanarSeries() = default;
  PlanarSeries(PowerSeries x, PowerSeries y) : x_(std::move(x)), y_(std::move(y)) {}
  const PowerSeries& x() const { return x_; }
  const PowerSeries& y() const { return y_; }
  std::array<double, 2> eval(double s) const { return {x_.eval(s), y_.eval(s)}; }
  std::array<double, 2> eval_derivative(double s, int k) const {
    return {x_.eval_derivative(s, k), y_.eval_derivative(s, k)};
  }
  PlanarSeries derivative() const { return {x_.derivative(), y_.derivative()}; }

 private:
  PowerSeries x_;
  PowerSeries y_;
};

}  // namespace ias::holo
