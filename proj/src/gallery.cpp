#include "ias/gallery.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>


namespace ias::gallery {

using holo::Expr;

namespace {

const std::vector<ExampleInfo> kExamples = {
    {"paraboloid", {"k"}, {{"k", "0.5"}}, 1, false},
    {"rotational", {"r", "sign"}, {{"r", "1"}, {"sign", "1"}}, 1, true},
    {"two_end", {"a", "b", "c"}, {{"a", "2"}, {"b", "1"}, {"c", "0"}}, 1, true},
    {"multivalued", {"r", "sign"}, {{"r", "1"}, {"sign", "1"}}, 1, true},
    {"one_end", {}, {}, 1, false},
    {"helicoidal", {"a"}, {{"a", "1"}}, 1, false},
    {"punctured_split", {}, {}, -1, true},
};

double parse_real(const std::string& key, const std::string& text) {
  const CEps v = parse_ceps(text, 1);
  if (v.im() != 0.0) throw InvalidParameter(key + " must be real, got " + text);
  return v.re();
}

int parse_sign(const std::string& key, const std::string& text) {
  if (text == "+" || text == "+1" || text == "1") return 1;
  if (text == "-" || text == "-1") return -1;
  throw InvalidParameter(key + " must be +1 or -1, got " + text);
}

}  // namespace

const std::vector<ExampleInfo>& examples() { return kExamples; }

const ExampleInfo& info(const std::string& name) {
  for (const auto& e : kExamples)
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : kExamples) known += (known.empty() ? "" : ", ") + e.name;
  throw InvalidParameter("unknown example '" + name + "' (known: " + known + ")");
}

weier::WeierstrassData get_example(const std::string& name, const Params& params) {
  return get_example(name, params, 64, 64);
}

weier::WeierstrassData get_example(const std::string& name, const Params& given, int n1, int n2) {
  const ExampleInfo& ex = info(name);
  Params p = ex.defaults;
  int eps = ex.default_eps;
  for (const auto& [key, value] : given) {
    if (key == "eps") {
      const int e = parse_sign(key, value);
      if (ex.eps_fixed && e != ex.default_eps)
        throw InvalidParameter(name + " requires eps = " + std::to_string(ex.default_eps));
      eps = e;
      continue;
    }
    if (std::find(ex.keys.begin(), ex.keys.end(), key) == ex.keys.end())
      throw InvalidParameter("example " + name + " has no parameter '" + key + "'");
    p[key] = value;
  }

  const Expr z = Expr::variable(eps);
  auto cst = [eps](const CEps& c) { return Expr::constant(CEps{c.re(), c.im(), eps}); };
  auto lit = [&](const std::string& key) { return parse_ceps(p.at(key), eps); };
  const CEps jj = CEps::unit_j(eps);

  if (name == "paraboloid") {
    const CEps k = lit("k");
    if (mod_sq(k) == 1.0) throw InvalidParameter("paraboloid needs |k| != 1 (h vanishes identically)");
    weier::WeierstrassData d(z, cst(k) * z, DomainSpec::rectangle(-1, 1, -1, 1, n1, n2), name);
    return d;
  }
  if (name == "rotational" || name == "multivalued") {
    const double r = parse_real("r", p.at("r"));
    if (r == 0.0 || !std::isfinite(r)) throw InvalidParameter("r must be a nonzero real");
    const int sign = parse_sign("sign", p.at("sign"));
    CEps coeff = CEps::real(sign * r * r, eps);
    if (name == "multivalued") coeff = coeff * jj;
    const double ar = std::abs(r);
    weier::WeierstrassData d(z, cst(coeff) / z, DomainSpec::annulus(0.5 * ar, 2.0 * ar, n1, n2), name);
    d.punctures.push_back(CEps::real(0.0, eps));
    return d;
  }
  if (name == "two_end") {
    const CEps a = lit("a"), b = lit("b"), c = lit("c");
    if (std::abs(mod_sq(a) - 1.0) <= 1e-15)
      throw InvalidParameter("two_end needs |a| != 1, got a = " + to_string(a));
    Expr f = cst(a) * z;
    if (b != CEps::real(0.0, eps)) f = f + cst(b) / z;
    if (c != CEps::real(0.0, eps)) f = f + cst(c);
    weier::WeierstrassData d(z, f, DomainSpec::annulus(0.5, 2.0, n1, n2), name);
    d.punctures.push_back(CEps::real(0.0, eps));
    return d;
  }
  if (name == "one_end") {
    return weier::WeierstrassData(z, z + z.pow(2), DomainSpec::rectangle(-1, 1, -1, 1, n1, n2), name);
  }
  if (name == "helicoidal") {
    const double a = parse_real("a", p.at("a"));
    if (a == 0.0) throw InvalidParameter("helicoidal needs a != 0");
    const Expr ez = exp(z);
    return weier::WeierstrassData(
        cst(CEps::real(a, eps)) * ez, cst(CEps::real(-a, eps)) * exp(-z),
        DomainSpec::rectangle(-1.5, 1.5, 0.0, 2.0 * std::numbers::pi, n1, n2), name);
  }
  // punctured_split: Phi = (-B, A, 1) = (j z, H^2 antiderivative, 1) with H = z.
  const Expr A = cst(CEps::real(1.0 / 3.0, eps)) * z.pow(3);
  const Expr B = -(cst(jj) * z);
  const Expr ej = cst(eps * jj);  // eps j
  const Expr half = cst(CEps::real(0.5, eps));
  const Expr G = half * (B - ej * A);
  const Expr F = half * (-B - ej * A);
  return weier::WeierstrassData(G, F, DomainSpec::rectangle(-1, 1, -1, 1, n1, n2), name);
}

}  // namespace ias::gallery
