#include <random>

#include "doctest.h"
#include "ias/holo.hpp"

using ias::CEps;
using ias::holo::Expr;
using ias::holo::parse;

namespace {

bool close(const CEps& a, const CEps& b, double tol) {
  return std::abs(a.re() - b.re()) <= tol && std::abs(a.im() - b.im()) <= tol;
}

// Central difference along the real direction; for (split-)holomorphic f
// this is f'(z).
CEps fd(const Expr& f, const CEps& z, double h = 1e-5) {
  const CEps d{h, 0.0, z.eps()};
  return (f.eval(z + d) - f.eval(z - d)) / (2.0 * h);
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(close(parse("z^2", 1).eval({1, 1, 1}), {0, 2, 1}, 1e-15));
  CHECK(close(parse("z^2", -1).eval({1, 1, -1}), {2, 2, -1}, 1e-15));
  CHECK(close(parse("exp(z)", 1).eval({0, 0, 1}), {1, 0, 1}, 0));
  CHECK(close(parse("(1+2j)*z - 3", 1).eval({2, 0, 1}), {-1, 4, 1}, 1e-15));
}

TEST_CASE("evaluation reports the failing subexpression") {
  const Expr f = parse("1/(z-1)", 1);
  CHECK_THROWS_AS(f.eval({1, 0, 1}), ias::SingularDivisor);
  try {
    f.eval({1, 0, 1});
  } catch (const ias::SingularDivisor& e) {
    CHECK(std::string(e.what()).find("z") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("1/z", -1).eval({1, 1, -1}), ias::SingularDivisor);
}

TEST_CASE("derivative matches finite differences") {
  const char* cases[] = {"z^3 - 2*z + 1", "exp(2*z)*z", "1/z + z^-2", "(z+1)/(z^2+3)", "exp(-z)*(1+j)",
                         "j*(z^3/3 - z)/2", "exp(z)*(1+exp(z/3))/(1+2*exp(z/3))"};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.4, 1.2);
  for (int eps : {1, -1}) {
    for (const char* text : cases) {
      const Expr f = parse(text, eps);
      const Expr df = f.derive();
      for (int k = 0; k < 20; ++k) {
        const CEps z{u(rng), 0.3 * u(rng), eps};
        CAPTURE(text);
        CAPTURE(eps);
        CHECK(close(df.eval(z), fd(f, z), 1e-7 * (1 + ias::euclid(df.eval(z)))));
      }
    }
  }
}

TEST_CASE("derivative simplification") {
  CHECK(parse("z", 1).derive().is_one());
  CHECK(parse("3", 1).derive().is_zero());
  CHECK(parse("2*z", 1).derive().str() == "2");
}

TEST_CASE("print then parse rebuilds the same tree") {
  const char* cases[] = {"z",          "-z",          "2*z^3 - z/4",          "(1+2j)*exp(-3*z)",
                         "j*z + (-2)", "z^-2",        "exp(z)/(1 + exp(z)*j)", "1.5e-3*z - -1",
                         "(z-1)^2",    "-(z + 1)",    "z - (z - 1)",          "z/(z/2)"};
  for (int eps : {1, -1}) {
    for (const char* text : cases) {
      const Expr a = parse(text, eps);
      const Expr b = parse(a.str(), eps);
      CAPTURE(text);
      CAPTURE(a.str());
      CHECK(ias::holo::identical(a, b));
      CHECK(b.str() == a.str());
    }
  }
}

TEST_CASE("parse errors carry a column") {
  try {
    parse("z + * 2", 1);
    FAIL("expected a parse error");
  } catch (const ias::ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse("z^1.5", 1), ias::ParseError);
  CHECK_THROWS_AS(parse("sin(z)", 1), ias::ParseError);
  CHECK_THROWS_AS(parse("(z", 1), ias::ParseError);
  CHECK_THROWS_AS(parse("", 1), ias::ParseError);
}

TEST_CASE("mixed algebras do not combine") {
  CHECK_THROWS_AS(parse("z", 1) + parse("z", -1), ias::AlgebraMismatch);
}

TEST_CASE("series extension is holomorphic") {
  // c(s) = s^2 extends to z^2 in both algebras.
  ias::holo::PowerSeries c(0.0, {0.0, 0.0, 1.0});
  for (int eps : {1, -1}) {
    const Expr e = Expr::extension(c, eps);
    const CEps z{0.3, 0.4, eps};
    CHECK(close(e.eval(z), z * z, 1e-15));
    CHECK(close(e.derive().eval(z), 2.0 * z, 1e-15));
  }
}

TEST_CASE("trust radius") {
  // 1/(1-s) truncated: ratio-test radius 1, trust 0.75.
  std::vector<double> g(12, 1.0);
  ias::holo::PowerSeries p(0.0, g);
  CHECK(p.trust_radius() == doctest::Approx(0.75));
  CHECK_NOTHROW(p.eval(0.5));
  CHECK_THROWS_AS(p.eval(0.9), ias::TrustRadiusError);
  CHECK_THROWS_AS(p.extend({0.0, 0.8, 1}), ias::TrustRadiusError);
}
