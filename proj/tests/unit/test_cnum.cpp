#include <random>

#include "doctest.h"
#include "ias/cnum.hpp"

using ias::CEps;

namespace {

bool close(const CEps& a, const CEps& b, double tol) {
  return std::abs(a.re() - b.re()) <= tol && std::abs(a.im() - b.im()) <= tol && a.eps() == b.eps();
}

}  // namespace

TEST_CASE("j squared is -eps") {
  for (int eps : {1, -1}) {
    const CEps j = CEps::unit_j(eps);
    CHECK(j * j == CEps(-eps, 0.0, eps));
  }
}

TEST_CASE("product formula") {
  const CEps a{2, 3, -1}, b{-1, 4, -1};
  // (2 + 3j)(-1 + 4j) with j^2 = 1: (-2 + 12) + j(8 - 3)
  CHECK(a * b == CEps(10, 5, -1));
  const CEps c{2, 3, 1}, d{-1, 4, 1};
  CHECK(c * d == CEps(-14, 5, 1));
}

TEST_CASE("conj(z) z is the quadratic form") {
  const CEps z{3, 4, -1};
  CHECK((conj(z) * z) == CEps(-7, 0, -1));
  CHECK(ias::mod_sq(z) == -7);
  CHECK(ias::mod_sq(CEps{3, 4, 1}) == 25);
}

TEST_CASE("mixed algebras are rejected") {
  CHECK_THROWS_AS(CEps(1, 0, 1) + CEps(1, 0, -1), ias::AlgebraMismatch);
  CHECK_THROWS_AS(CEps(1, 0, 1) * CEps(1, 0, -1), ias::AlgebraMismatch);
}

TEST_CASE("division by null-cone elements fails") {
  CHECK_THROWS_AS(CEps(1, 0, -1) / CEps(1, 1, -1), ias::SingularDivisor);
  CHECK_THROWS_AS(CEps(1, 0, -1) / CEps(2, -2, -1), ias::SingularDivisor);
  CHECK_THROWS_AS(CEps(1, 0, 1) / CEps(0, 0, 1), ias::SingularDivisor);
  CHECK_NOTHROW(CEps(1, 0, 1) / CEps(1, 1, 1));
}

TEST_CASE("ring laws on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int eps : {1, -1}) {
    for (int k = 0; k < 500; ++k) {
      const CEps a{u(rng), u(rng), eps}, b{u(rng), u(rng), eps}, c{u(rng), u(rng), eps};
      CHECK(close(a * b, b * a, 1e-14));
      CHECK(close((a * b) * c, a * (b * c), 1e-12));
      CHECK(close(a * (b + c), a * b + a * c, 1e-12));
      if (std::abs(ias::mod_sq(b)) > 1e-2) CHECK(close((a * b) / b, a, 1e-10));
    }
  }
}

TEST_CASE("exp is a homomorphism") {
  for (int eps : {1, -1}) {
    const CEps a{0.3, -0.7, eps}, b{-0.2, 1.1, eps};
    CHECK(close(exp(a + b), exp(a) * exp(b), 1e-14));
  }
  CHECK(close(exp(CEps{0, 1, -1}), CEps{std::cosh(1.0), std::sinh(1.0), -1}, 1e-15));
}

TEST_CASE("integer powers") {
  const CEps z{1, 1, 1};
  CHECK(close(pow(z, 2), CEps{0, 2, 1}, 1e-15));
  CHECK(close(pow(z, -1) * z, CEps{1, 0, 1}, 1e-15));
  CHECK(pow(z, 0) == CEps(1, 0, 1));
  CHECK_THROWS_AS(pow(CEps{1, 1, -1}, -1), ias::SingularDivisor);
}

TEST_CASE("literal text round trip") {
  for (const char* text : {"2", "-1.5", "3j", "j", "1+2j", "1-2j", "0.1-0.30000000000000004j"}) {
    const CEps z = ias::parse_ceps(text, 1);
    CHECK(ias::parse_ceps(ias::to_string(z), 1) == z);
  }
  CHECK(ias::parse_ceps("1+0j", -1) == CEps(1, 0, -1));
  CHECK(ias::parse_ceps("j", 1) == CEps(0, 1, 1));
  CHECK(ias::to_string(CEps{0, 3, 1}) == "3j");
  CHECK(ias::to_string(CEps{1, -2, 1}) == "1-2j");
  CHECK_THROWS_AS(ias::parse_ceps("1+", 1), ias::ParseError);
  CHECK_THROWS_AS(ias::parse_ceps("abc", 1), ias::ParseError);
  CHECK_THROWS_AS(ias::parse_ceps("1", 0), ias::InvalidParameter);
}
