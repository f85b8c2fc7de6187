#include <doctest.h>

#include "charmut/error.hpp"
#include "charmut/linalg.hpp"
#include "charmut/rep.hpp"
#include "charmut/trace.hpp"

using namespace charmut;

namespace {

const cplx I{0.0, 1.0};

Representation free_rep(std::vector<std::string> gens, std::vector<Mat2C> mats, RepMode mode = RepMode::SL2) {
  Representation r{{"F", gens, {}}, {}, mode};
  for (std::size_t i = 0; i < gens.size(); ++i) r.images[gens[i]] = mats[i];
  return r;
}

Mat2C traceless(Rng& rng) {
  while (true) {
    const cplx p = random_box_entry(rng), q = random_box_entry(rng);
    if (std::abs(q) < 0.1) continue;
    return {p, q, (-1.0 - p * p) / q, -p};
  }
}

// A matrix of prescribed trace.
Mat2C with_trace(Rng& rng, cplx t) {
  while (true) {
    const cplx p = random_box_entry(rng), q = random_box_entry(rng);
    if (std::abs(q) < 0.1) continue;
    const cplx d = t - p;
    return {p, q, (p * d - 1.0) / q, d};
  }
}

}  // namespace

TEST_CASE("null space of a rank-two system") {
  std::vector<Row4> rows{{1.0, 2.0, 0.0, 0.0}, {0.0, 0.0, 1.0, -1.0}, {2.0, 4.0, 0.0, 0.0}};
  const auto ns = null_space(rows, 1e-12);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) {
    for (const auto& r : rows) {
      cplx s{};
      for (int k = 0; k < 4; ++k) s += r[k] * v[k];
      CHECK(std::abs(s) < 1e-12);
    }
  }
}

TEST_CASE("evaluate handles inverses and the empty word") {
  Rng rng(1);
  const auto rep = free_rep({"a", "b"}, {random_sl2(rng), random_sl2(rng)});
  CHECK(distance(evaluate(rep, Word()), Mat2C::identity()) == 0.0);
  const Word w = parse_word("a b^-2 a^3", rep.presentation.generators);
  const Mat2C a = rep.image("a"), b = rep.image("b");
  const Mat2C direct = a * b.inverse() * b.inverse() * a * a * a;
  CHECK(distance(evaluate(rep, w), direct) < 1e-10);
  CHECK(std::abs(evaluate(rep, w).det() - 1.0) < 1e-8);
  CHECK_THROWS_AS(evaluate(rep, Word::generator("z")), Error);
}

TEST_CASE("irreducibility: upper triangular pair is reducible") {
  const Mat2C a{2.0, 0.0, 0.0, 0.5};
  const Mat2C b{1.0, 1.0, 0.0, 1.0};
  CHECK_FALSE(is_irreducible({a, b}));
  CHECK_THROWS_AS(is_irreducible({Mat2C::identity(), -Mat2C::identity()}), Error);
}

TEST_CASE("irreducibility agrees with the commutator-trace criterion on random pairs") {
  Rng rng(7);
  for (int n = 0; n < 100; ++n) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng);
    const bool oracle = std::abs(commutator(a, b).trace() - 2.0) > 1e-7;
    CHECK(is_irreducible({a, b}) == oracle);
  }
  // Conjugated upper-triangular pairs only share an eigenvector.
  for (int n = 0; n < 20; ++n) {
    const Mat2C g = random_sl2(rng);
    const Mat2C a{random_box_entry(rng) + 1.5, random_box_entry(rng), 0.0, 0.0};
    Mat2C a1 = a;
    a1.d = 1.0 / a.a;
    const Mat2C b{2.0, random_box_entry(rng), 0.0, 0.5};
    CHECK_FALSE(is_irreducible({g * a1 * g.inverse(), g * b * g.inverse()}));
  }
}

TEST_CASE("conjugator recovers a conjugating matrix up to sign") {
  Rng rng(11);
  for (int n = 0; n < 30; ++n) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng), g = random_sl2(rng);
    const std::vector<Mat2C> m1{a, b};
    const std::vector<Mat2C> m2{g * a * g.inverse(), g * b * g.inverse()};
    const Mat2C x = conjugator_solve(m1, m2);
    CHECK(std::min(distance(x, g), distance(x, -g)) < 1e-6 * g.max_norm());
    CHECK(distance(x, fix_sign(g)) < 1e-6 * g.max_norm());
    for (std::size_t i = 0; i < 2; ++i) CHECK(distance(x.inverse() * m2[i] * x, m1[i]) < 1e-6);
  }
  const Mat2C a = random_sl2(rng), b = random_sl2(rng);
  CHECK(distance(conjugator_solve({a, b}, {a, b}), Mat2C::identity()) < 1e-9);
}

TEST_CASE("conjugator failures") {
  const Mat2C a{2.0, 0.0, 0.0, 0.5};
  const Mat2C b{3.0, 0.0, 0.0, 1.0 / 3.0};
  CHECK_THROWS_WITH_AS(conjugator_solve({a, b}, {a, b}), doctest::Contains("NonUniqueConjugator"), Error);
  Rng rng(3);
  const Mat2C c = random_sl2(rng), d = random_sl2(rng), e = random_sl2(rng);
  CHECK_THROWS_WITH_AS(conjugator_solve({c, d}, {c, e}), doctest::Contains("NoConjugator"), Error);
}

TEST_CASE("sign rule for conjugators") {
  const Mat2C m{cplx(-3.0, 0.1), 1.0, 0.5, cplx(0.2, 0.0)};
  CHECK(fix_sign(m).a.real() > 0.0);
  // Tie between entries 0 and 3: the first one decides.
  const Mat2C tie{cplx(0.0, -2.0), 0.0, 0.0, cplx(2.0, 0.0)};
  CHECK(fix_sign(tie).a == cplx(0.0, 2.0));
}

TEST_CASE("centraliser: Klein four image") {
  const Mat2C alpha{I, 0.0, 0.0, -I};
  const Mat2C beta{0.0, 1.0, -1.0, 0.0};
  CHECK(centraliser_classify({alpha, beta}) == CentraliserClass::KleinianFour);
  CHECK(axes_rule_nontrivial(alpha, beta));
}

TEST_CASE("centraliser: one traceless generator is still trivial") {
  Rng rng(5);
  for (int n = 0; n < 20; ++n) {
    const Mat2C a = traceless(rng), b = random_sl2(rng);
    CHECK(centraliser_classify({a, b}) == CentraliserClass::Trivial);
    CHECK_FALSE(axes_rule_nontrivial(a, b));
  }
}

TEST_CASE("centraliser classification matches the axes rule") {
  Rng rng(17);
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng);
    if (!is_irreducible({a, b})) continue;
    ++checked;
    const bool nontrivial = centraliser_classify({a, b}) != CentraliserClass::Trivial;
    CHECK(nontrivial == axes_rule_nontrivial(a, b));
  }
  CHECK(checked == 100);
  // Forced onto two axes: tr a = tr b = 0.
  for (int n = 0; n < 20; ++n) {
    const Mat2C a = traceless(rng), b = traceless(rng);
    REQUIRE(is_irreducible({a, b}));
    CHECK(centraliser_classify({a, b}) == CentraliserClass::Order2);
    CHECK(axes_rule_nontrivial(a, b));
  }
  // tr a = 0 and tr ab = 0.
  for (int n = 0; n < 20; ++n) {
    const Mat2C a = traceless(rng);
    const Mat2C b = a.inverse() * traceless(rng);
    if (!is_irreducible({a, b})) continue;
    CHECK(centraliser_classify({a, b}) != CentraliserClass::Trivial);
    CHECK(axes_rule_nontrivial(a, b));
  }
}

TEST_CASE("reducible diagonal pair has a positive-dimensional centraliser") {
  const Mat2C a{2.0, 0.0, 0.0, 0.5};
  const Mat2C b{3.0, 0.0, 0.0, 1.0 / 3.0};
  CHECK(centraliser_classify({a, b}) == CentraliserClass::PositiveDimensional);
}

TEST_CASE("sign twist acts on characters by eps") {
  Rng rng(2);
  const auto rep = free_rep({"a", "b"}, {random_sl2(rng), random_sl2(rng)});
  const auto twisted = sign_twist(rep, SignCharacter({{"a", -1}, {"b", 1}}));
  const Word ab = parse_word("a b", rep.presentation.generators);
  CHECK(std::abs(evaluate(twisted, ab).trace() + evaluate(rep, ab).trace()) < 1e-12);
  const auto same = sign_twist(rep, SignCharacter({{"a", 1}, {"b", 1}}));
  CHECK(distance(same.image("a"), rep.image("a")) == 0.0);

  auto bar = rep;
  bar.mode = RepMode::PSL2;
  const auto testset = character_testset(rep.presentation.generators);
  for (int mask = 0; mask < 4; ++mask) {
    const SignCharacter eps({{"a", mask & 1 ? -1 : 1}, {"b", mask & 2 ? -1 : 1}});
    CHECK(character_distance(character_of(bar, testset), character_of(sign_twist(bar, eps), testset)) == 0.0);
  }

  Representation with_rel{{"Z", {"a"}, {parse_word("a", std::vector<std::string>{"a"})}}, {{"a", Mat2C::identity()}}, RepMode::SL2};
  CHECK_THROWS_WITH_AS(sign_twist(with_rel, SignCharacter({{"a", -1}})), doctest::Contains("IllDefinedSign"), Error);
}

TEST_CASE("lift search order: identity first, then by flip count") {
  const auto order = lift_search_order(3);
  REQUIRE(order.size() == 8);
  CHECK(order[0] == std::vector<bool>{false, false, false});
  CHECK(order[1] == std::vector<bool>{true, false, false});
  CHECK(order[2] == std::vector<bool>{false, true, false});
  CHECK(order[3] == std::vector<bool>{false, false, true});
  CHECK(order[4] == std::vector<bool>{true, true, false});
  CHECK(order[7] == std::vector<bool>{true, true, true});
}

TEST_CASE("lift search under a <-> b when tr a = -tr b") {
  Rng rng(9);
  const std::vector<std::string> g{"a", "b"};
  const Endomorphism swap(g, g, {{"a", Word::generator("b")}, {"b", Word::generator("a")}});
  for (int n = 0; n < 10; ++n) {
    const Mat2C a = random_sl2(rng);
    const Mat2C b = with_trace(rng, -a.trace());
    const auto rep = free_rep(g, {a, b}, RepMode::PSL2);
    // Flipping a comes first in search order; flipping b works as well.
    const auto lift = find_tau_invariant_lift(rep, swap);
    CHECK(distance(lift.image("a"), -a) == 0.0);
    CHECK(distance(lift.image("b"), b) == 0.0);
    auto sigma = free_rep(g, {a, -b});
    const auto testset = character_testset(g);
    CHECK(character_distance(character_of(sigma, testset), character_of(precompose(sigma, swap), testset)) < 1e-9);
  }
  const Mat2C a = random_sl2(rng), b = random_sl2(rng);
  CHECK_THROWS_WITH_AS(find_tau_invariant_lift(free_rep(g, {a, b}, RepMode::PSL2), swap), doctest::Contains("NotFound"), Error);
}

TEST_CASE("genus-two tau preserves the surface relator") {
  Rng rng(4);
  const auto rep = sample_g2(rng, false);
  const auto tau_rep = precompose(rep, g2_tau());
  CHECK(distance(evaluate(tau_rep, g2_presentation().relators.front()), Mat2C::identity()) < 1e-7);
  CHECK(g2_condition_words().size() == 5);
}

TEST_CASE("genus-two sampler produces both lifting classes") {
  Rng rng(21);
  for (int n = 0; n < 20; ++n) {
    const auto bad = sample_g2(rng, true);
    const auto r = g2_nonliftable_test(bad);
    CHECK_FALSE(r.liftable);
    CHECK(distance(evaluate(bad, g2_presentation().relators.front()), -Mat2C::identity()) < 1e-8);
    // Sign flips never change liftability.
    for (int mask = 1; mask < 16; ++mask) {
      auto flipped = bad;
      int bit = 0;
      for (auto& [gname, m] : flipped.images) {
        if (mask >> bit++ & 1) m = -m;
      }
      CHECK_FALSE(g2_nonliftable_test(flipped).liftable);
    }
    CHECK(g2_nonliftable_test(sample_g2(rng, false)).liftable);
  }
}

TEST_CASE("genus-two nonliftable example built from diagonal A") {
  // These A and B anticommute, so [A,B] = -E and C, D only need to commute.
  const Mat2C a{I, 0.0, 0.0, -I};
  const Mat2C b{0.0, 1.0, -1.0, 0.0};
  REQUIRE(distance(commutator(a, b), -Mat2C::identity()) < 1e-12);
  Rng rng(8);
  const Mat2C c = random_sl2(rng);
  std::vector<Row4> rows;
  for (const auto& r : intertwiner_rows(c, c)) rows.push_back(r);
  const auto ns = null_space(rows, 1e-7);
  REQUIRE(ns.size() == 2);
  const Mat2C d = (to_matrix(ns[0]) + to_matrix(ns[1]) * cplx(0.3, 0.7)).normalized();
  const Representation rep{g2_presentation(), {{"a", a}, {"b", b}, {"c", c}, {"d", d}}, RepMode::PSL2};
  CHECK(distance(evaluate(rep, g2_presentation().relators.front()), -Mat2C::identity()) < 1e-8);
  CHECK_FALSE(g2_nonliftable_test(rep).liftable);
}

TEST_CASE("genus-two: a tau-invariant nonliftable family outside the five conditions") {
  // A = E, B traceless, [C,D] = -E.  Every squared trace on the test set is
  // preserved by tau, yet (tr bc^-1)^2 is generically nonzero.
  Rng rng(12);
  for (int n = 0; n < 5; ++n) {
    const Representation rep{g2_presentation(),
                             {{"a", Mat2C::identity()}, {"b", traceless(rng)}, {"c", Mat2C{I, 0.0, 0.0, -I}}, {"d", Mat2C{0.0, 1.0, -1.0, 0.0}}},
                             RepMode::PSL2};
    const auto r = g2_nonliftable_test(rep);
    CHECK_FALSE(r.liftable);
    CHECK(r.tau_invariant);
    CHECK_FALSE(r.five_conditions);
    CHECK(std::abs(r.five[1]) > 1e-3);
  }
}

TEST_CASE("genus-two test rejects non-surface representations") {
  Rng rng(6);
  const Representation rep{g2_presentation(),
                           {{"a", random_sl2(rng)}, {"b", random_sl2(rng)}, {"c", random_sl2(rng)}, {"d", random_sl2(rng)}},
                           RepMode::PSL2};
  CHECK_THROWS_WITH_AS(g2_nonliftable_test(rep), doctest::Contains("NotASurfaceGroupRep"), Error);
}
