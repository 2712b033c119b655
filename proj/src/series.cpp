#include "ias/series.hpp"

#include <cmath>
#include <string>

#include "ias/format.hpp"

namespace ias::holo {

double ratio_test_radius(const std::vector<double>& coeffs) {
  int hi = -1, lo = -1;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[static_cast<std::size_t>(k)] == 0.0) continue;
    if (hi < 0) {
      hi = k;
    } else {
      lo = k;
      break;
    }
  }
  if (lo < 0) return std::numeric_limits<double>::infinity();
  const double ratio = std::abs(coeffs[static_cast<std::size_t>(lo)] /
                                coeffs[static_cast<std::size_t>(hi)]);
  return std::pow(ratio, 1.0 / (hi - lo));
}

PowerSeries::PowerSeries(double center, std::vector<double> coeffs,
                         std::optional<double> trust_radius)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (trust_radius) {
    if (!(*trust_radius > 0.0)) throw InvalidParameter("trust radius must be positive");
    trust_ = *trust_radius;
  } else {
    trust_ = 0.75 * ratio_test_radius(coeffs_);
  }
}

void PowerSeries::check_radius(double distance) const {
  if (distance > trust_) {
    throw TrustRadiusError("series evaluated at distance " + format_double(distance) +
                           " beyond trust radius " + format_double(trust_));
  }
}

double PowerSeries::horner(double s) const {
  const double d = s - center_;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + *it;
  return acc;
}

double PowerSeries::eval(double s) const {
  check_radius(std::abs(s - center_));
  return horner(s);
}

double PowerSeries::eval_derivative(double s, int k) const {
  if (k == 0) return eval(s);
  PowerSeries d = derivative();
  for (int i = 1; i < k; ++i) d = d.derivative();
  return d.eval(s);
}

PowerSeries PowerSeries::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(static_cast<double>(k) * coeffs_[k]);
  if (d.empty()) d.push_back(0.0);
  return PowerSeries(center_, std::move(d), trust_);
}

CEps PowerSeries::extend(const CEps& z) const {
  if (z.eps() > 0) {
    const CEps d = z - center_;
    check_radius(euclid(d));
    CEps acc = CEps::real(0.0, 1);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + *it;
    return acc;
  }
  const double u = z.re() + z.im();
  const double v = z.re() - z.im();
  check_radius(std::max(std::abs(u - center_), std::abs(v - center_)));
  const double cu = horner(u);
  const double cv = horner(v);
  return {0.5 * (cu + cv), 0.5 * (cu - cv), -1};
}

CurveSeries::CurveSeries(double center, const std::vector<Triple>& coeffs,
                         std::optional<double> trust_radius) {
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> v;
    v.reserve(coeffs.size());
    for (const auto& row : coeffs) v.push_back(row[c]);
    comp_[c] = PowerSeries(center, std::move(v), trust_radius);
  }
}

CurveSeries::CurveSeries(std::array<PowerSeries, 3> components) : comp_(std::move(components)) {}

double CurveSeries::trust_radius() const {
  return std::min({comp_[0].trust_radius(), comp_[1].trust_radius(), comp_[2].trust_radius()});
}

Triple CurveSeries::eval(double s) const {
  return {comp_[0].eval(s), comp_[1].eval(s), comp_[2].eval(s)};
}

Triple CurveSeries::eval_derivative(double s, int k) const {
  return {comp_[0].eval_derivative(s, k), comp_[1].eval_derivative(s, k),
          comp_[2].eval_derivative(s, k)};
}

CurveSeries CurveSeries::derivative() const {
  return CurveSeries({comp_[0].derivative(), comp_[1].derivative(), comp_[2].derivative()});
}

std::array<CEps, 3> series_compose(const CurveSeries& curve, const CEps& z) {
  if (curve.order() < 2) throw InvalidParameter("series_compose needs truncation order >= 2");
  return {curve.component(0).extend(z), curve.component(1).extend(z),
          curve.component(2).extend(z)};
}

}  // namespace ias::holo
