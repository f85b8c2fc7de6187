#include <doctest.h>

#include "charmut/error.hpp"
#include "charmut/fig8.hpp"
#include "charmut/mutation.hpp"
#include "charmut/trace.hpp"

using namespace charmut;

namespace {

const std::vector<std::string> kTA{"t", "a"};

std::vector<Word> fibred_testset() { return character_testset(fig8::fibred_group().generators); }

Representation random_fibre_irreducible(Rng& rng) {
  while (true) {
    auto r = fig8::sample_irreducible(fig8::knot_group(), rng);
    if (!r) continue;
    const auto f = fig8::to_fibred(*r);
    if (is_irreducible(f, {Word::generator("a"), Word::generator("b")})) return *r;
  }
}

}  // namespace

TEST_CASE("catalog contents") {
  const auto& c = builtin_catalog();
  REQUIRE(c.size() == 5);
  const auto& g2 = catalog_surface(SurfaceId::G2);
  CHECK(g2.tau_total);
  CHECK(g2.tau().image("c").to_string() == "b^-1 c d c^-1 d^-1 c^-1 b");
  const auto& t2 = catalog_surface(SurfaceId::T2);
  CHECK_FALSE(t2.tau_total);
  REQUIRE(t2.trace_conditions.size() == 1);
  CHECK(t2.trace_conditions[0].lhs.to_string() == "c");
  CHECK(t2.trace_conditions[0].rhs.to_string() == "c^-1 a b a^-1 b^-1");
  CHECK(catalog_surface(SurfaceId::T1).trace_conditions.empty());
  CHECK(catalog_surface(SurfaceId::S4).trace_conditions.size() == 2);
  CHECK_THROWS_WITH_AS(catalog_surface(SurfaceId::S3).tau(), doctest::Contains("TauIncomplete"), Error);
}

TEST_CASE("T1 invariance holds for every fig-8 representation") {
  Rng rng(31);
  const SurfaceEmbedding emb{catalog_surface(SurfaceId::T1), {{"a", Word::generator("a")}, {"b", fig8::fibre_b_word()}}};
  for (int n = 0; n < 20; ++n) {
    Representation r{fig8::knot_group(), {{"t", random_sl2(rng)}, {"a", random_sl2(rng)}}, RepMode::SL2};
    CHECK(tau_invariance_check(r, emb).invariant);
  }
}

TEST_CASE("G2 invariance holds for SL2 surface representations") {
  Rng rng(32);
  SurfaceEmbedding emb{catalog_surface(SurfaceId::G2), {}};
  for (const auto& g : g2_presentation().generators) emb.words[g] = Word::generator(g);
  for (int n = 0; n < 10; ++n) {
    auto r = sample_g2(rng, false);
    r.mode = RepMode::SL2;
    CHECK(tau_invariance_check(r, emb).invariant);
  }
}

TEST_CASE("condition-based invariance for S4 and T2") {
  Rng rng(33);
  const std::vector<std::string> g{"a", "b", "c"};
  SurfaceEmbedding s4{catalog_surface(SurfaceId::S4), {}};
  SurfaceEmbedding t2{catalog_surface(SurfaceId::T2), {}};
  for (const auto& x : g) s4.words[x] = t2.words[x] = Word::generator(x);
  const Mat2C a = random_sl2(rng);
  const Mat2C gc = random_sl2(rng);
  const Mat2C b = gc * a * gc.inverse();
  // tr c = tr abc: c from the null direction of a linear trace condition.
  const Mat2C c0 = random_sl2(rng), dir = random_sl2(rng);
  auto f = [&](const Mat2C& c) { return c.trace() - (a * b * c).trace(); };
  const Mat2C c = (c0 + dir * (-f(c0) / f(dir))).normalized();
  Representation r{{"F3", g, {}}, {{"a", a}, {"b", b}, {"c", c}}, RepMode::SL2};
  const auto res = tau_invariance_check(r, s4);
  CHECK(res.by_conditions);
  CHECK(res.invariant);
  CHECK_FALSE(tau_invariance_check(r, t2).invariant);
}

TEST_CASE("trace conditions are neither empty nor everything on integer samples") {
  Rng rng(34);
  for (auto id : {SurfaceId::S3, SurfaceId::S4, SurfaceId::T2}) {
    const double f = condition_hit_fraction(catalog_surface(id), 500, rng);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
  }
}

TEST_CASE("fig-8 fibred form agrees with the two-generator presentation") {
  Rng rng(35);
  const auto r = random_fibre_irreducible(rng);
  CHECK(relator_residual(r) < 1e-9);
  CHECK(relator_residual(fig8::to_fibred(r)) < 1e-9);
}

TEST_CASE("HNN mutation of fig-8 lands on the sister group") {
  Rng rng(36);
  for (int n = 0; n < 10; ++n) {
    const auto r = random_fibre_irreducible(rng);
    const auto fibred = fig8::to_fibred(r);
    const auto m = mutate_hnn(fibred, fig8::fibre_split());
    CHECK(m.relator_residual < 1e-7);
    // The fibre is untouched.
    CHECK(distance(m.rep.image("a"), fibred.image("a")) == 0.0);
    CHECK(distance(m.rep.image("b"), fibred.image("b")) == 0.0);
    const auto sister = fig8::mutant_to_sister(m.rep);
    CHECK(relator_residual(sister) < 1e-7);
    const auto [x, y] = fig8::xy(sister);
    CHECK(std::abs(1.0 + (y - 1.0) * x * x) < 1e-6);
    // And back to the mutant fibred form.
    const auto again = fig8::sister_to_mutant(sister);
    for (const auto& g : {"t", "a", "b"}) CHECK(distance(again.image(g), m.rep.image(g)) < 1e-9);
  }
}

TEST_CASE("HNN round trip recovers the character up to the sign of X") {
  Rng rng(37);
  const auto back_split = fig8::fibre_split().mutant_split();
  CHECK(back_split.mutant().relators == fig8::fibred_group().relators);
  for (int n = 0; n < 10; ++n) {
    const auto fibred = fig8::to_fibred(random_fibre_irreducible(rng));
    const auto m = mutate_hnn(fibred, fig8::fibre_split());
    const auto back = mutate_hnn(m.rep, back_split);
    const auto ts = fibred_testset();
    const double d1 = character_distance(character_of(back.rep, ts), character_of(fibred, ts));
    const double d2 = character_distance(character_of(back.alternate, ts), character_of(fibred, ts));
    CHECK(std::min(d1, d2) < 1e-6);
    // X squares to -E here, so the recovered sign is the alternate one.
    CHECK(distance(m.conjugator * m.conjugator, -Mat2C::identity()) < 1e-8);
    auto bar = fibred, bar_back = back.rep;
    bar.mode = bar_back.mode = RepMode::PSL2;
    CHECK(character_distance(character_of(bar_back, ts), character_of(bar, ts)) < 1e-6);
  }
}

TEST_CASE("reducible fibre restriction has no unique conjugator") {
  // Dihedral reps are abelian on the fibre.
  for (const auto u : fig8::primitive_fifth_roots()) {
    const auto r = fig8::dihedral_rep(u);
    CHECK(relator_residual(r) < 1e-9);
    CHECK_THROWS_WITH_AS(mutate_hnn(fig8::to_fibred(r), fig8::fibre_split()), doctest::Contains("NonUniqueConjugator"), Error);
  }
}

TEST_CASE("partial tau refuses to mutate") {
  HnnSplitting s = fig8::fibre_split();
  s.surface = SurfaceId::S3;
  Rng rng(39);
  const auto fibred = fig8::to_fibred(random_fibre_irreducible(rng));
  CHECK_THROWS_WITH_AS(mutate_hnn(fibred, s), doctest::Contains("TauIncomplete"), Error);
}

TEST_CASE("inconsistent splittings are rejected") {
  HnnSplitting s = fig8::fibre_split();
  s.edges[1].second = parse_word("a b", std::vector<std::string>{"t", "a", "b"});
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("InconsistentSplitting"), Error);
  HnnSplitting s2 = fig8::fibre_split();
  s2.stable = "z";
  CHECK_THROWS_WITH_AS(s2.validate(), doctest::Contains("InconsistentSplitting"), Error);
}

TEST_CASE("PSL2 HNN mutation needs a trivial centraliser") {
  Rng rng(40);
  auto fibred = fig8::to_fibred(random_fibre_irreducible(rng));
  fibred.mode = RepMode::PSL2;
  const auto m = mutate_hnn(fibred, fig8::fibre_split());
  CHECK(m.relator_residual < 1e-7);
}

TEST_CASE("separating mutation over a once-punctured torus") {
  Rng rng(41);
  SeparatingSplitting split;
  split.minus = Presentation{"Mminus", {"a", "b", "x"}, {}};
  split.plus = Presentation{"Mplus", {"p", "q", "y"}, {}};
  split.surface = SurfaceId::T1;
  split.minus_words = {{"a", Word::generator("a")}, {"b", Word::generator("b")}};
  split.plus_words = {{"a", Word::generator("p")}, {"b", Word::generator("q")}};
  for (int n = 0; n < 10; ++n) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng);
    Representation r{split.amalgam(),
                     {{"a", a}, {"b", b}, {"x", random_sl2(rng)}, {"p", a}, {"q", b}, {"y", random_sl2(rng)}},
                     RepMode::SL2};
    REQUIRE(relator_residual(r) < 1e-12);
    const auto m = mutate_separating(r, split);
    CHECK(m.relator_residual < 1e-7);
    // Plus side is unchanged, minus side conjugated.
    CHECK(distance(m.rep.image("y"), r.image("y")) == 0.0);
    CHECK(std::abs(m.rep.image("x").trace() - r.image("x").trace()) < 1e-9);
  }
  // Sides that disagree on the surface are inconsistent.
  const Mat2C a = random_sl2(rng), b = random_sl2(rng);
  Representation bad{split.amalgam(),
                     {{"a", a}, {"b", b}, {"x", random_sl2(rng)}, {"p", b}, {"q", a}, {"y", random_sl2(rng)}},
                     RepMode::SL2};
  CHECK_THROWS_WITH_AS(mutate_separating(bad, split), doctest::Contains("InconsistentSplitting"), Error);
}

TEST_CASE("separating mutation of a reducible surface restriction") {
  SeparatingSplitting split;
  split.minus = Presentation{"Mminus", {"a", "b"}, {}};
  split.plus = Presentation{"Mplus", {"p", "q"}, {}};
  split.surface = SurfaceId::T1;
  split.minus_words = {{"a", Word::generator("a")}, {"b", Word::generator("b")}};
  split.plus_words = {{"a", Word::generator("p")}, {"b", Word::generator("q")}};
  const Mat2C a{2.0, 1.0, 0.0, 0.5}, b{3.0, 0.0, 0.0, 1.0 / 3.0};
  Representation r{split.amalgam(), {{"a", a}, {"b", b}, {"p", a}, {"q", b}}, RepMode::SL2};
  CHECK_THROWS_AS(mutate_separating(r, split), Error);
}

TEST_CASE("lift search for partial involutions") {
  Rng rng(42);
  const auto& s4 = catalog_surface(SurfaceId::S4);
  const std::vector<std::string> g{"a", "b", "c"};
  // tr a = -tr b and tr c = -tr abc: one flip of a fixes both.
  const Mat2C a = random_sl2(rng);
  const Mat2C gc = random_sl2(rng);
  const Mat2C b = -(gc * a * gc.inverse());
  const Mat2C c0 = random_sl2(rng), dir = random_sl2(rng);
  auto f = [&](const Mat2C& c) { return c.trace() + (a * b * c).trace(); };
  const Mat2C c = (c0 + dir * (-f(c0) / f(dir))).normalized();
  Representation r{{"F3", g, {}}, {{"a", a}, {"b", b}, {"c", c}}, RepMode::PSL2};
  const auto lift = find_tau_invariant_lift(r, s4);
  CHECK(distance(lift.image("a"), -a) == 0.0);
}
