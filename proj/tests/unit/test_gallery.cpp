#include "doctest.h"
#include "ias/gallery.hpp"

using ias::CEps;
using ias::gallery::get_example;

TEST_CASE("paraboloid data") {
  const auto d = get_example("paraboloid", {{"k", "0"}});
  CHECK(d.eps == 1);
  CHECK(d.F.eval({0.3, 0.2, 1}) == CEps(0, 0, 1));
  CHECK(d.G.eval({0.3, 0.2, 1}) == CEps(0.3, 0.2, 1));
  const auto split = get_example("paraboloid", {{"k", "0"}, {"eps", "-1"}});
  CHECK(split.eps == -1);
  CHECK_THROWS_AS(get_example("paraboloid", {{"k", "1"}}), ias::InvalidParameter);
}

TEST_CASE("rotational and multivalued data") {
  const auto rot = get_example("rotational", {{"r", "1"}, {"sign", "+1"}});
  CHECK(rot.F.eval({2, 0, 1}) == CEps(0.5, 0, 1));
  CHECK(rot.domain.kind == ias::DomainKind::annulus);
  CHECK(rot.punctures.size() == 1);
  const auto neg = get_example("rotational", {{"r", "2"}, {"sign", "-"}});
  CHECK(neg.F.eval({2, 0, 1}) == CEps(-2, 0, 1));
  CHECK(neg.domain.r_in() == doctest::Approx(1));
  CHECK(neg.domain.r_out() == doctest::Approx(4));
  const auto multi = get_example("multivalued", {});
  CHECK(multi.F.eval({1, 0, 1}) == CEps(0, 1, 1));
  CHECK_THROWS_AS(get_example("rotational", {{"r", "0"}}), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("multivalued", {{"r", "0"}}), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("rotational", {{"eps", "-1"}}), ias::InvalidParameter);
}

TEST_CASE("two-end family") {
  CHECK_THROWS_AS(get_example("two_end", {{"a", "1+0j"}}), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("two_end", {{"a", "-1"}}), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("two_end", {{"a", "0.6+0.8j"}}), ias::InvalidParameter);
  for (const char* a : {"0.5", "2"}) {
    const auto d = get_example("two_end", {{"a", a}}, 16, 17);
    CHECK_NOTHROW(ias::weier::eval_surface(d));
  }
  const auto d = get_example("two_end", {});
  // 2 z + 1/z at z = 1
  CHECK(d.F.eval({1, 0, 1}) == CEps(3, 0, 1));
}

TEST_CASE("one-end and helicoidal data") {
  const auto one = get_example("one_end");
  CHECK(one.F.eval({1, 1, 1}) == CEps(1, 3, 1));
  const auto hel = get_example("helicoidal", {{"a", "2"}});
  const CEps z{0.4, -0.3, 1};
  const CEps fg = hel.F.eval(z) * hel.G.eval(z);
  CHECK(fg.re() == doctest::Approx(-4));
  CHECK(fg.im() == doctest::Approx(0).epsilon(1e-14));
}

TEST_CASE("split punctured example") {
  const auto d = get_example("punctured_split");
  CHECK(d.eps == -1);
  // Phi = (-B, A, 1) with A = z^3/3 and B = -j z.
  const CEps z{0.4, 0.25, -1}, j{0, 1, -1};
  const CEps G = d.G.eval(z), F = d.F.eval(z);
  const CEps B = G - F, A = j * (G + F);
  CHECK(ias::euclid(B - (-(j * z))) <= 1e-15);
  CHECK(ias::euclid(A - z * z * z / 3.0) <= 1e-15);
  // h = |G'|^2 - |F'|^2 = s^2 + t^2 with the split modulus.
  const CEps g1 = d.dG.eval(z), f1 = d.dF.eval(z);
  CHECK(ias::mod_sq(g1) - ias::mod_sq(f1) == doctest::Approx(0.4 * 0.4 + 0.25 * 0.25));
}

TEST_CASE("unknown names and keys") {
  CHECK_THROWS_AS(get_example("catenoid"), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("paraboloid", {{"r", "1"}}), ias::InvalidParameter);
  CHECK_THROWS_AS(get_example("paraboloid", {{"eps", "2"}}), ias::InvalidParameter);
}
