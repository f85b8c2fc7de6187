#include <doctest.h>

#include <random>

#include "charmut/error.hpp"
#include "charmut/trace.hpp"

using namespace charmut;

namespace {

const std::vector<std::string> kAB{"a", "b"};
const std::vector<std::string> kABC{"a", "b", "c"};
const std::vector<std::string> kABCD{"a", "b", "c", "d"};

Word w(const char* text, const std::vector<std::string>& alphabet) { return parse_word(text, alphabet); }

// Every freely reduced word of the given length over n generators.
void enumerate_words(std::size_t n, std::size_t length, std::vector<std::vector<int>>& out, std::vector<int>& cur) {
  if (cur.size() == length) {
    out.push_back(cur);
    return;
  }
  for (int g = 1; g <= static_cast<int>(n); ++g) {
    for (int s : {1, -1}) {
      if (!cur.empty() && cur.back() == -s * g) continue;
      cur.push_back(s * g);
      enumerate_words(n, length, out, cur);
      cur.pop_back();
    }
  }
}

Word from_codes(const std::vector<int>& codes, const std::vector<std::string>& alphabet) {
  Word out;
  for (int x : codes) out = out * Word::generator(alphabet[static_cast<std::size_t>(std::abs(x) - 1)], x > 0 ? 1 : -1);
  return out;
}

}  // namespace

TEST_CASE("small traces have the textbook forms") {
  CHECK(reduce_trace(w("a^-1 b", kAB), kAB).to_string() == "t_a*t_b - t_ab");
  CHECK(reduce_trace(Word(), kAB).to_string() == "2");
  CHECK(reduce_trace(w("a^2", kAB), kAB).to_string() == "t_a^2 - 2");
  CHECK(reduce_trace(w("a d^-1", kABCD), kABCD).to_string() == "t_a*t_d - t_ad");
  CHECK(reduce_trace(w("a", kAB), kAB).to_string() == "t_a");
}

TEST_CASE("commutator trace over two generators") {
  const auto e = reduce_trace(w("a b a^-1 b^-1", kAB), kAB);
  CHECK(e.to_string() == "-t_a*t_b*t_ab + t_a^2 + t_b^2 + t_ab^2 - 2");
}

TEST_CASE("twice-punctured torus boundary word matches random matrices") {
  const Word word = w("c^-1 a b a^-1 b^-1", kABC);
  const auto e = reduce_trace(word, kABC);
  CHECK_FALSE(e.has_extended());
  for (const auto& c : e.coordinates) CHECK(c.key.size() <= 3);
  CHECK(oracle_check(word, kABC, 100, 7) < 1e-8);
}

TEST_CASE("oracle agrees on abab^-1 and on single letters") {
  CHECK(oracle_check(w("a b a b^-1", kAB), kAB, 100, 1) < 1e-8);
  CHECK(oracle_check(w("a", kAB), kAB, 10, 1) < 1e-14);
  CHECK(r3_identity_error(100, 3) < 1e-8);
}

TEST_CASE("exhaustive short words over three generators agree with the oracle") {
  TraceEngine engine(kABC);
  Rng rng(99);
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    enumerate_words(3, len, words, cur);
    for (const auto& codes : words) {
      const Word word = from_codes(codes, kABC);
      const auto e = engine.reduce(word);
      CHECK_FALSE(e.has_extended());
      for (int t = 0; t < 3; ++t) {
        std::map<std::string, Mat2C> m{{"a", random_sl2(rng)}, {"b", random_sl2(rng)}, {"c", random_sl2(rng)}};
        Mat2C direct;
        for (const auto& l : word.letters()) direct *= l.exp > 0 ? m[l.gen] : m[l.gen].adjugate();
        const cplx exact = direct.trace();
        REQUIRE(std::abs(exact - e.evaluate(m)) / std::max(1.0, std::abs(exact)) < 1e-8);
      }
    }
  }
}

TEST_CASE("random longer words over three generators agree with the oracle") {
  std::mt19937_64 gen(2024);
  for (int n = 0; n < 60; ++n) {
    const std::size_t len = 7 + gen() % 6;
    std::vector<int> codes;
    while (codes.size() < len) {
      const int g = static_cast<int>(gen() % 3) + 1;
      const int x = gen() % 2 ? g : -g;
      if (!codes.empty() && codes.back() == -x) continue;
      codes.push_back(x);
    }
    const Word word = from_codes(codes, kABC);
    CHECK(oracle_check(word, kABC, 20, static_cast<std::uint64_t>(n)) < 1e-8);
  }
}

TEST_CASE("traces are invariant under rotation and inversion") {
  TraceEngine engine(kABC);
  const Word word = w("a^2 b^-1 c a b c^-1", kABC);
  const auto base = engine.reduce(word).poly;
  CHECK(engine.reduce(word.inverse()).poly == base);
  auto letters = word.letters();
  for (std::size_t k = 1; k < letters.size(); ++k) {
    Word rot;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const auto& l = letters[(i + k) % letters.size()];
      rot = rot * Word::generator(l.gen, l.exp);
    }
    CHECK(engine.reduce(rot).poly == base);
  }
}

TEST_CASE("rewriting is independent of memo state") {
  const Word word = w("a b^-1 c^2 a^-1 b", kABC);
  TraceEngine warm(kABC);
  for (const char* other : {"a b c", "c b a", "a^3 b^-2", "b c^-1 a"}) warm.reduce(w(other, kABC));
  const auto cold = reduce_trace(word, kABC);
  const auto hot = warm.reduce(word);
  CHECK(cold.to_string() == hot.to_string());
  warm.clear_memo();
  CHECK(warm.memo_size() == 0);
}

TEST_CASE("four-letter words reduce to classical coordinates") {
  for (const char* text : {"a b c d", "a c b d", "a d c b", "a b c d a^-1", "a b^-1 c d^-1"}) {
    const Word word = w(text, kABCD);
    CHECK(oracle_check(word, kABCD, 30, 5) < 1e-8);
  }
}

TEST_CASE("character test set sizes") {
  CHECK(character_testset(kAB).size() == 3);
  CHECK(character_testset(kABC).size() == 7);
  CHECK(character_testset(kABCD).size() == 14);
  CHECK(character_testset(kAB)[2].to_string() == "a b");
}

TEST_CASE("alphabets beyond eight generators are rejected") {
  std::vector<std::string> big;
  for (char ch = 'a'; ch <= 'i'; ++ch) big.emplace_back(1, ch);
  CHECK_THROWS_AS(TraceEngine{big}, Error);
  CHECK_THROWS_AS(character_testset(big), Error);
}
