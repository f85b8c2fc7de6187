#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "charmut/error.hpp"
#include "charmut/fig8.hpp"
#include "charmut/word.hpp"

using namespace charmut;

namespace {

const std::vector<std::string> kAB{"a", "b"};
const std::vector<std::string> kABC{"a", "b", "c"};
const std::vector<std::string> kTA{"t", "a"};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvariantViolation;
}

/// Unreduced letter sequence.
std::vector<Syllable> random_letters(std::mt19937_64& rng, const std::vector<std::string>& gens, int len) {
  std::uniform_int_distribution<std::size_t> g(0, gens.size() - 1);
  std::uniform_int_distribution<int> s(0, 1);
  std::vector<Syllable> out;
  for (int i = 0; i < len; ++i) out.push_back({gens[g(rng)], s(rng) ? 1 : -1});
  return out;
}

/// Oracle: cancel adjacent inverse pairs in random order until none is left.
std::vector<Syllable> reduce_randomly(std::vector<Syllable> w, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].gen == w[i + 1].gen && w[i].exp == -w[i + 1].exp) spots.push_back(i);
    if (spots.empty()) return w;
    const std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

Endomorphism random_endo(std::mt19937_64& rng, const std::vector<std::string>& gens) {
  std::map<std::string, Word> images;
  for (const auto& g : gens) images[g] = Word(random_letters(rng, gens, 1 + static_cast<int>(rng() % 4)));
  return Endomorphism(gens, gens, images);
}

/// H_1 of < a, b | r > from the exponent sums (p, q) of r: Z + Z/gcd(p, q).
std::vector<std::int64_t> one_relator_h1(std::int64_t p, std::int64_t q) {
  const std::int64_t d = std::gcd(p, q);
  if (d == 0) return {0, 0};
  if (d == 1) return {0};
  return {d, 0};
}

}  // namespace

TEST_CASE("parse_word examples and errors") {
  const Word rel = parse_word("t^-1 a^-1 t^-1 a t a^-2 t a", kTA);
  CHECK(rel.length() == 9);
  CHECK(parse_word("a a^-1 b", kAB).to_string() == "b");
  CHECK(parse_word("a^2 a^-2", kAB).empty());
  CHECK(parse_word("1", kAB).empty());
  CHECK(kind_of([] { parse_word("a q", kAB); }) == ErrorKind::UnknownGenerator);
  CHECK(kind_of([] { parse_word("a^", kAB); }) == ErrorKind::MalformedToken);
  CHECK(kind_of([] { parse_word("a^x", kAB); }) == ErrorKind::MalformedToken);
  CHECK(kind_of([] { parse_word("a^0", kAB); }) == ErrorKind::ZeroExponent);
}

TEST_CASE("print then parse is idempotent") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Word w(random_letters(rng, kABC, 1 + static_cast<int>(rng() % 15)));
    const Word again = parse_word(w.to_string(), kABC);
    CHECK(again == w);
    CHECK(parse_word(again.to_string(), kABC).to_string() == w.to_string());
  }
}

TEST_CASE("free reduction is confluent") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto letters = random_letters(rng, kAB, static_cast<int>(rng() % 20));
    const Word w(letters);
    const Word oracle(reduce_randomly(letters, rng));
    // The oracle result has no adjacent inverse pair, so its letters are the normal form.
    CHECK(w.letters() == oracle.letters());
    CHECK(w.length() == oracle.length());
    for (std::size_t k = 1; k < w.syllables().size(); ++k) CHECK(w.syllables()[k - 1].gen != w.syllables()[k].gen);
  }
}

TEST_CASE("endomorphisms") {
  const std::map<std::string, Word> tau_images{{"a", parse_word("a^-1", kAB)}, {"b", parse_word("a b^-1 a^-1", kAB)}};
  const Endomorphism tau(kAB, kAB, tau_images);
  const Endomorphism phi(kAB, kAB, {{"a", parse_word("a b a", kAB)}, {"b", parse_word("b a", kAB)}});
  CHECK(apply_endo(tau, parse_word("b", kAB)).to_string() == "a b^-1 a^-1");
  CHECK(apply_endo(tau, apply_endo(phi, parse_word("a", kAB))).to_string() == "b^-1 a^-2");
  CHECK(apply_endo(tau.compose(phi), parse_word("a", kAB)).to_string() == "b^-1 a^-2");

  std::mt19937_64 rng(3);
  const auto id = Endomorphism::identity(kABC);
  for (int i = 0; i < 200; ++i) {
    const Endomorphism e = random_endo(rng, kABC), f = random_endo(rng, kABC);
    const Word w(random_letters(rng, kABC, 8));
    CHECK(apply_endo(e.compose(f), w) == apply_endo(e, apply_endo(f, w)));
    CHECK(apply_endo(id, w) == w);
  }
}

TEST_CASE("abelianization invariants") {
  CHECK(abelianization_invariants(fig8::knot_group()) == std::vector<std::int64_t>{0});
  CHECK(abelianization_invariants(fig8::sister_group()) == std::vector<std::int64_t>{5, 0});
  CHECK(abelianization_invariants(Presentation{"F2", kAB, {}}) == std::vector<std::int64_t>{0, 0});

  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Word r(random_letters(rng, kAB, 1 + static_cast<int>(rng() % 14)));
    const Presentation p{"P", kAB, {r}};
    const auto h = abelianization_invariants(p);
    CHECK(h == one_relator_h1(r.exponent_sum("a"), r.exponent_sum("b")));

    // Conjugating or inverting the relator does not change H_1.
    const Word g(random_letters(rng, kAB, 3));
    CHECK(abelianization_invariants(Presentation{"P", kAB, {g * r * g.inverse()}}) == h);
    CHECK(abelianization_invariants(Presentation{"P", kAB, {r.inverse()}}) == h);
  }
}

TEST_CASE("sign characters against brute force") {
  auto brute = [](const Presentation& p) {
    std::size_t n = 0;
    const std::size_t k = p.generators.size();
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
      std::map<std::string, int> v;
      for (std::size_t i = 0; i < k; ++i) v[p.generators[i]] = (mask >> i) & 1 ? -1 : 1;
      const SignCharacter eps(v);
      bool ok = true;
      for (const auto& r : p.relators) ok = ok && eps(r) == 1;
      n += ok;
    }
    return n;
  };
  CHECK(enumerate_sign_characters(Presentation{"F2", kAB, {}}).size() == 4);
  CHECK(enumerate_sign_characters(fig8::sister_group()).size() == 2);
  CHECK(enumerate_sign_characters(fig8::knot_group()).size() == 2);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> rels;
    for (int j = 0; j < 1 + static_cast<int>(rng() % 2); ++j)
      rels.emplace_back(random_letters(rng, kABC, 1 + static_cast<int>(rng() % 9)));
    const Presentation p{"P", kABC, rels};
    const auto chars = enumerate_sign_characters(p);
    CHECK(chars.size() == brute(p));
    for (const auto& eps : chars) {
      CHECK(sign_character_well_defined(p, eps));
      for (const auto& r : rels) CHECK(eps(r) == 1);
    }
  }
}
