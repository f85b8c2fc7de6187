#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <fmt/format.h>

#include "charmut/curve.hpp"
#include "charmut/error.hpp"
#include "charmut/fig8.hpp"

using namespace charmut;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kQY{"X", "y"};

PlaneCurve curve(const char* text, const std::vector<std::string>& vars = kXY) {
  return PlaneCurve(parse_poly(text, vars), {vars[0], vars[1]});
}

PlaneCurve knot_quotient() { return quotient_map(PlaneCurve(fig8::knot_curve(), {"x", "y"})); }
PlaneCurve sister_quotient() { return quotient_map(PlaneCurve(fig8::sister_curve(), {"x", "y"})); }

RationalPlaneMap map_of(const char* first, const char* second) {
  return {{parse_rational(first, kQY), parse_rational(second, kQY)}};
}

cplx eval_y(const MultiPoly& p, cplx y) { return p.evaluate(std::map<std::string, cplx>{{"y", y}}); }

}  // namespace

TEST_CASE("univariate roots against a product of known linear factors") {
  const MultiPoly p = parse_poly("(t - 1)*(t - 2)*(t - 3)*(t + 4)*(t^2 + 1)");
  auto roots = univariate_roots(p);
  REQUIRE(roots.size() == 6);
  for (const cplx expected : {cplx{1}, cplx{2}, cplx{3}, cplx{-4}, cplx{0, 1}, cplx{0, -1}}) {
    double best = 1e9;
    for (const cplx r : roots) best = std::min(best, std::abs(r - expected));
    CHECK(best < 1e-9);
  }
  CHECK(univariate_roots(parse_poly("3*t^2 - 12")).size() == 2);
  CHECK(univariate_roots(MultiPoly::constant(5)).empty());
  CHECK_THROWS_AS(univariate_roots(parse_poly("x*y + 1")), Error);
}

TEST_CASE("plane curves are stored squarefree") {
  const PlaneCurve c = curve("(y - x^2)^2*(x + 1)");
  CHECK(equal_up_to_unit(c.poly(), parse_poly("(y - x^2)*(x + 1)", kXY)));
  CHECK_THROWS_AS(PlaneCurve(MultiPoly({"x", "y"}), {"x", "y"}), Error);
  CHECK_THROWS_AS(curve("x + z", {"x", "y", "z"}), Error);
}

TEST_CASE("quotient map halves even powers and otherwise eliminates x") {
  const PlaneCurve q = knot_quotient();
  CHECK(q.vars()[0] == "X");
  CHECK(equal_up_to_unit(q.poly(), parse_poly("1 - y - y^2 + (-1 + y)*X", kQY)));
  CHECK(equal_up_to_unit(sister_quotient().poly(), parse_poly("1 + (-1 + y)*X", kQY)));

  // Odd powers: image points of sampled points must lie on the image curve.
  const PlaneCurve odd = curve("x^3 + x*y - 2 + y^2");
  const PlaneCurve img = quotient_map(odd);
  for (const double y0 : {-1.3, 0.2, 0.7, 2.5}) {
    const MultiPoly slice = odd.poly().substitute("y", MultiPoly::constant(Rational(y0))).trimmed();
    for (const cplx x0 : univariate_roots(slice)) {
      const auto [X, y] = quotient_map({x0, cplx{y0}});
      const cplx v = img.poly().evaluate(std::map<std::string, cplx>{{"X", X}, {"y", y}});
      CHECK(std::abs(v) < 1e-7);
    }
  }
  CHECK(img.poly().degree("X") == 3);
}

TEST_CASE("abelian locus vanishes exactly at 2cos(2 pi k / d)") {
  const MultiPoly knot = abelian_locus(fig8::knot_group(), "a");
  CHECK(equal_up_to_unit(knot, parse_poly("2 - y")));
  const MultiPoly sister = abelian_locus(fig8::sister_group(), "a");
  CHECK(equal_up_to_unit(sister, parse_poly("(2 - y)*(1 - y - y^2)")));

  // Oracle: the roots are the distinct values 2cos(2 pi k / d).
  for (int d = 1; d <= 9; ++d) {
    Presentation p{"cyclic", {"g", "h"}, {parse_word(fmt::format("g^{}", d), std::vector<std::string>{"g", "h"})}};
    const MultiPoly loc = abelian_locus(p, "g");
    std::set<long> values;
    for (int k = 0; k < d; ++k) {
      const double v = 2.0 * std::cos(2.0 * std::numbers::pi * k / d);
      values.insert(std::lround(v * 1e9));
      CHECK(std::abs(eval_y(loc, v)) < 1e-8);
    }
    CHECK(loc.degree("y") == static_cast<int>(values.size()));
    CHECK(abelian_locus(p, "h").is_zero());
  }
  CHECK_THROWS_AS(abelian_locus(fig8::knot_group(), "q"), Error);
}

TEST_CASE("curve analysis on standard examples") {
  SUBCASE("cusp is singular") {
    const auto a = curve_analyze(curve("y^2 - x^3"));
    CHECK_FALSE(a.smooth_affine);
    CHECK(a.degree == 3);
  }
  SUBCASE("nodal cubic is singular") { CHECK_FALSE(curve_analyze(curve("y^2 - x^2*(x + 1)")).smooth_affine); }
  SUBCASE("Fermat cubic has genus one") {
    const auto a = curve_analyze(curve("x^3 + y^3 - 1"));
    CHECK(a.smooth_affine);
    CHECK(a.smooth_at_infinity);
    REQUIRE(a.genus);
    CHECK(*a.genus == 1);
    CHECK_FALSE(a.parametrization);
  }
  SUBCASE("circle") {
    const auto a = curve_analyze(curve("x^2 + y^2 - 1"));
    REQUIRE(a.genus);
    CHECK(*a.genus == 0);
  }
  SUBCASE("parabola is parametrised") {
    const auto a = curve_analyze(curve("y - x^2"));
    REQUIRE(a.parametrization);
    CHECK(a.parametrization->second == parse_rational("s^2"));
    CHECK(*a.genus == 0);
    // y - x^2 has a flex-free point [0:1:0] at infinity, which is smooth.
    CHECK(a.smooth_at_infinity);
  }
  SUBCASE("degree above six is rejected") {
    CHECK_THROWS_AS(curve_analyze(curve("x^7 + y - 1")), Error);
  }
  SUBCASE("figure-eight curves") {
    const auto knot = curve_analyze(PlaneCurve(fig8::knot_curve(), {"x", "y"}));
    CHECK(knot.smooth_affine);
    CHECK(knot.smooth_at_infinity);
    REQUIRE(knot.genus);
    CHECK(*knot.genus == 1);

    const auto sister = curve_analyze(PlaneCurve(fig8::sister_curve(), {"x", "y"}));
    CHECK(sister.smooth_affine);
    CHECK_FALSE(sister.smooth_at_infinity);
    REQUIRE(sister.parametrization);
    CHECK(*sister.genus == 0);
    // Oracle: the parametrisation lands on the curve.
    for (const double s : {0.3, 1.7, -2.2}) {
      const std::map<std::string, cplx> at{{"s", s}};
      const cplx x = sister.parametrization->first.evaluate(at), y = sister.parametrization->second.evaluate(at);
      CHECK(std::abs(fig8::sister_curve().evaluate(std::map<std::string, cplx>{{"x", x}, {"y", y}})) < 1e-12);
    }

    const auto kq = curve_analyze(knot_quotient());
    const auto sq = curve_analyze(sister_quotient());
    CHECK(*kq.genus == 0);
    CHECK(*sq.genus == 0);
  }
}

TEST_CASE("birational verification of the quotient curves") {
  const MultiPoly extra = parse_poly("(2 - y)*(1 - y - y^2)");
  const auto mu = map_of("1/(1 - y)", "y");
  const auto mu_inv = map_of("(1 - y - y^2)/(1 - y)", "y");
  const BirationalReport r = birational_verify(mu, mu_inv, knot_quotient(), sister_quotient(), extra);
  CHECK(r.pass());
  CHECK(r.source_exceptional_count == 3);
  CHECK(r.target_exceptional_count == 3);
  // Oracle: each exceptional point lies on its curve and on the extra locus.
  for (const auto& p : r.source_exceptional) {
    const std::map<std::string, cplx> at{{"X", p.first}, {"y", p.second}};
    CHECK(std::abs(knot_quotient().poly().evaluate(at)) < 1e-9);
    CHECK(std::abs(extra.evaluate(at)) < 1e-9);
  }
  for (const auto& p : r.target_exceptional) {
    const std::map<std::string, cplx> at{{"X", p.first}, {"y", p.second}};
    CHECK(std::abs(sister_quotient().poly().evaluate(at)) < 1e-9);
  }

  SUBCASE("a map that misses the target") {
    CHECK_THROWS_AS(birational_verify(map_of("y", "y"), mu_inv, knot_quotient(), sister_quotient()), Error);
  }
  SUBCASE("a wrong inverse fails the round trip") {
    const PlaneCurve shifted = curve("X - y", kQY);
    const PlaneCurve line2 = curve("X - 2*y", kQY);
    const auto r3 = birational_verify(map_of("2*y", "y"), map_of("X", "X"), shifted, line2);
    CHECK(r3.pushforward_zero);
    CHECK_FALSE(r3.roundtrip_identity);
  }
  SUBCASE("curves not linear in the first variable") {
    CHECK_THROWS_AS(birational_verify(mu, mu_inv, PlaneCurve(fig8::knot_curve(), {"x", "y"}), sister_quotient()),
                    Error);
  }
}

TEST_CASE("ideal points of the figure-eight curves") {
  // Oracle: walk out along the curve and watch which coordinate grows.
  // Smallest |y| over the points with the given large x.
  auto far_x = [](const MultiPoly& f, double big) {
    const MultiPoly slice = f.substitute("x", MultiPoly::constant(Rational(big))).trimmed();
    double m = 1e300;
    for (const cplx y : univariate_roots(slice)) m = std::min(m, std::abs(y));
    return m;
  };
  auto far_y = [](const MultiPoly& f, double big) {
    const MultiPoly slice = f.substitute("y", MultiPoly::constant(Rational(big))).trimmed();
    double m = 0;
    for (const cplx x : univariate_roots(slice)) m = std::max(m, std::abs(x));
    return m;
  };

  const auto knot = ideal_scan(PlaneCurve(fig8::knot_curve(), {"x", "y"}));
  CHECK(knot.total_multiplicity() == 3);
  REQUIRE(knot.points.size() == 2);
  CHECK(knot.points[0].multiplicity == 2);
  CHECK(std::abs(knot.points[0].first) == 0.0);
  CHECK(knot.points[0].first_unbounded);
  CHECK(far_y(fig8::knot_curve(), 1e8) > 1e3);
  CHECK_FALSE(knot.points[1].second_unbounded);
  CHECK(far_x(fig8::knot_curve(), 1e8) < 10);

  const auto sister = ideal_scan(PlaneCurve(fig8::sister_curve(), {"x", "y"}));
  CHECK(sister.total_multiplicity() == 3);
  REQUIRE(sister.points.size() == 2);
  CHECK_FALSE(sister.points[0].first_unbounded);
  CHECK(far_y(fig8::sister_curve(), 1e8) < 1e-3);
  CHECK_FALSE(sister.points[1].second_unbounded);

  const auto circle = ideal_scan(curve("x^2 + y^2 - 1"));
  REQUIRE(circle.points.size() == 2);
  for (const auto& p : circle.points) {
    CHECK(std::abs(std::abs(p.second) - 1.0) < 1e-12);
    CHECK(p.first_unbounded);
    CHECK(p.second_unbounded);
  }
}

TEST_CASE("path scan of the H(z) family") {
  const cplx u = fig8::primitive_fifth_roots().front();
  std::vector<cplx> zs;
  for (int k = 1; k <= 9; ++k) zs.push_back(std::pow(10.0, -k) * cplx{1.0, 0.3});
  const auto scan = path_scan(
      [&](cplx z) {
        const auto [x, y] = fig8::xy(fig8::rho_z(u, z));
        return std::pair{x * x, y};
      },
      zs);
  CHECK(scan.first_unbounded);
  CHECK_FALSE(scan.second_unbounded);
  CHECK(std::abs(scan.max_second - std::abs(u + 1.0 / u)) < 1e-12);
}

TEST_CASE("C-conditions along the H(z) family") {
  const cplx u = fig8::primitive_fifth_roots().front();
  const HnnSplitting split = fig8::fibre_split().mutant_split();
  std::vector<cplx> zs;
  for (int k = 1; k <= 9; ++k) zs.push_back(std::pow(10.0, -k) * cplx{1.0, 0.3});

  auto family = [&](cplx z) { return fig8::sister_to_mutant(fig8::rho_z(u, z)); };
  for (const cplx z : zs) CHECK(relator_residual(family(z)) < 1e-6);

  const auto r = c_condition_check(family, split, zs);
  CHECK(r.c1.pass);
  CHECK(r.c2.pass);
  CHECK(r.c3.pass);
  CHECK(r.c4.nonconstant);
  CHECK(r.c4.blowup_detected);
  // The family has abelian image: the generator images commute for every z.
  CHECK(r.abelian_image);
  for (const cplx z : {cplx{0.3, 0.1}, cplx{-1.7, 0.4}}) {
    const Representation rep = family(z);
    for (const char* g : {"a", "b"}) {
      const Mat2C t = rep.image("t"), h = rep.image(g);
      CHECK((t * h - h * t).max_norm() < 1e-12 * t.max_norm() * h.max_norm());
    }
  }

  SUBCASE("constant family has no blow-up") {
    auto constant = [&](cplx) { return family(cplx{0.5, 0.1}); };
    const auto c = c_condition_check(constant, split, zs);
    CHECK_FALSE(c.c4.nonconstant);
    CHECK_FALSE(c.c4.blowup_detected);
  }
  SUBCASE("a broken gluing fails C2") {
    auto broken = [&](cplx z) {
      Representation rep = family(z);
      rep.images["b"] = rep.images["b"] * Mat2C{1.0, 0.7, 0.0, 1.0};
      return rep;
    };
    CHECK_FALSE(c_condition_check(broken, split, zs).c2.pass);
  }
}

TEST_CASE("curve properties on random examples") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coeff(-5, 5);
  auto random_curve = [&](int d) {
    MultiPoly p(kXY);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        int c = coeff(rng);
        if (i + j == d && c == 0) c = 1;
        if (c == 0) continue;
        MultiPoly::TermMap t;
        t.emplace(Exponents{i, j}, Rational(c));
        p += MultiPoly(kXY, t);
      }
    return p;
  };
  int smooth = 0;
  for (int n = 0; smooth < 20 && n < 400; ++n) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const MultiPoly p = random_curve(d);
    const PlaneCurve c(p, {"x", "y"});
    if (c.degree() != d) continue;
    const auto a = curve_analyze(c);
    if (!(a.smooth_affine && a.smooth_at_infinity && a.smoothness_certified)) continue;
    ++smooth;
    // A smooth curve of degree d meets the line at infinity d times.
    CHECK(ideal_scan(c).total_multiplicity() == d);
    REQUIRE(a.genus);
    CHECK(*a.genus == (d - 1) * (d - 2) / 2);
    // Swapping the coordinates does not change the genus.
    Bindings swap;
    swap.emplace("x", RationalFn(parse_poly("y", kXY)));
    swap.emplace("y", RationalFn(parse_poly("x", kXY)));
    const PlaneCurve swapped(substitute(p, swap).as_polynomial(), {"x", "y"});
    const auto b = curve_analyze(swapped);
    REQUIRE(b.genus);
    CHECK(*b.genus == *a.genus);
  }
  CHECK(smooth == 20);

  // The curve y = x is a line: degree 1, genus 0, smooth everywhere.
  const auto line = curve_analyze(curve("y - x"));
  CHECK(line.degree == 1);
  CHECK(line.smooth_affine);
  CHECK(line.smooth_at_infinity);
  REQUIRE(line.genus);
  CHECK(*line.genus == 0);
  CHECK(ideal_scan(curve("y - x")).total_multiplicity() == 1);
}
