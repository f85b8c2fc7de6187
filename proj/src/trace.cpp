#include "charmut/trace.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include <fmt/format.h>

#include "charmut/error.hpp"

namespace charmut {

namespace {

using Letters = std::vector<int>;

// Sort key: generator i -> 2i, its inverse -> 2i + 1.
int letter_key(int x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }

Letters invert(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Letters cyclic_reduce(const Letters& w) {
  Letters s;
  for (int x : w) {
    if (!s.empty() && s.back() == -x) {
      s.pop_back();
    } else {
      s.push_back(x);
    }
  }
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[lo] == -s[hi - 1]) {
    ++lo;
    --hi;
  }
  return Letters(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
}

Letters rotated(const Letters& w, std::size_t k) {
  Letters out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[(i + k) % w.size()];
  return out;
}

bool key_less(const Letters& a, const Letters& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](int x, int y) { return letter_key(x) < letter_key(y); });
}

std::size_t inverse_count(const Letters& w) {
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](int x) { return x < 0; }));
}

// Least rotation of w or w^-1, restricted to the orientation(s) with fewer
// inverse letters; the result has at most half its letters inverted.
Letters canonical(const Letters& w) {
  if (w.empty()) return w;
  const std::size_t inv = inverse_count(w);
  std::vector<Letters> sources;
  if (2 * inv <= w.size()) sources.push_back(w);
  if (2 * inv >= w.size()) sources.push_back(invert(w));
  Letters best;
  bool have = false;
  for (const auto& s : sources) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      Letters r = rotated(s, k);
      if (!have || key_less(r, best)) {
        best = std::move(r);
        have = true;
      }
    }
  }
  return best;
}

Letters concat(std::initializer_list<const Letters*> parts) {
  Letters out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

Letters slice(const Letters& w, std::size_t from, std::size_t to) {
  return Letters(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

bool all_single_char(const std::vector<std::string>& names) {
  return std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
}

std::string coordinate_name(const std::vector<std::string>& key, bool single) {
  std::string out = "t_";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (!single && i > 0) out += '_';
    out += key[i];
  }
  return out;
}

void check_r3_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    const double err = r3_identity_error(100, 0x5eed);
    if (err > 1e-8) {
      throw Error(ErrorKind::InvariantViolation, fmt::format("three-letter reordering identity failed self-check ({:.3g})", err));
    }
  });
}

}  // namespace

bool TraceExpression::has_extended() const {
  return std::any_of(coordinates.begin(), coordinates.end(), [](const TraceCoordinate& c) { return c.extended; });
}

std::complex<double> TraceExpression::evaluate(const std::map<std::string, Mat2C>& images) const {
  std::map<std::string, std::complex<double>> point;
  for (const auto& coord : coordinates) {
    Mat2C m;
    for (const auto& letter : coord.word.letters()) {
      auto it = images.find(letter.gen);
      if (it == images.end()) throw Error(ErrorKind::UnknownGenerator, "no matrix for generator '" + letter.gen + "'");
      m *= letter.exp > 0 ? it->second : it->second.inverse();
    }
    point[coord.variable] = m.trace();
  }
  return poly.evaluate(point);
}

std::size_t TraceEngine::LettersHash::operator()(const Letters& w) const noexcept {
  std::size_t h = w.size();
  for (int x : w) h ^= static_cast<std::size_t>(x + 64) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

TraceEngine::TraceEngine(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  if (alphabet_.size() > kMaxTraceAlphabet) {
    throw Error(ErrorKind::AlphabetTooLarge, fmt::format("trace alphabet has {} generators (max {})", alphabet_.size(), kMaxTraceAlphabet));
  }
  check_r3_once();
  // Declare every <=3-letter coordinate up front so intermediate polynomials
  // share one variable list and the output order is canonical.
  const bool single = all_single_char(alphabet_);
  const std::size_t n = alphabet_.size();
  auto declare = [&](std::vector<std::size_t> idx) {
    TraceCoordinate c;
    for (auto i : idx) {
      c.key.push_back(alphabet_[i]);
      c.word = c.word * Word::generator(alphabet_[i]);
    }
    c.variable = coordinate_name(c.key, single);
    base_vars_.push_back(c.variable);
    coordinates_[c.variable] = std::move(c);
  };
  for (std::size_t i = 0; i < n; ++i) declare({i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) declare({i, j});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) declare({i, j, k});
}

TraceEngine::Letters TraceEngine::to_letters(const Word& w) const {
  Letters out;
  for (const auto& s : w.syllables()) {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), s.gen);
    if (it == alphabet_.end()) throw Error(ErrorKind::UnknownGenerator, "generator '" + s.gen + "' not in trace alphabet");
    const int code = static_cast<int>(it - alphabet_.begin()) + 1;
    for (int k = 0; k < std::abs(s.exp); ++k) out.push_back(s.exp > 0 ? code : -code);
  }
  return out;
}

Word TraceEngine::to_word(const Letters& w) const {
  Word out;
  for (int x : w) out = out * Word::generator(alphabet_[static_cast<std::size_t>(std::abs(x) - 1)], x > 0 ? 1 : -1);
  return out;
}

TraceExpression TraceEngine::reduce(const Word& w) {
  MultiPoly p = reduce_letters(to_letters(w));
  TraceExpression out;
  std::vector<std::string> used;
  for (const auto& v : p.variables()) {
    if (p.depends_on(v)) used.push_back(v);
  }
  out.poly = p.with_variables(used);
  for (const auto& v : used) out.coordinates.push_back(coordinates_.at(v));
  return out;
}

MultiPoly TraceEngine::reduce_letters(const Letters& w) {
  const Letters r = cyclic_reduce(w);
  if (r.empty()) return MultiPoly::constant(2, base_vars_);
  return reduce_canonical(canonical(r));
}

MultiPoly TraceEngine::reduce_canonical(const Letters& c) {
  if (auto it = memo_.find(c); it != memo_.end()) return it->second;

  const std::size_t len = c.size();
  const std::size_t inv = inverse_count(c);
  // Every recursive call below must reach a word that is strictly smaller in
  // (length, inverse count) after canonicalization, or one on fewer letters.
  auto smaller = [&](const Letters& child) {
    const Letters r = cyclic_reduce(child);
    const Letters k = canonical(r);
    if (k.size() < len || (k.size() == len && inverse_count(k) < inv)) return;
    throw Error(ErrorKind::InvariantViolation, "trace rewriting measure did not decrease");
  };

  MultiPoly result;
  if (inv > 0) {
    // R1: rotate the first inverse letter to the front, c ~ g^-1 v.
    const auto p = static_cast<std::size_t>(std::find_if(c.begin(), c.end(), [](int x) { return x < 0; }) - c.begin());
    const Letters rot = rotated(c, p);
    const int g = -rot[0];
    const Letters v = slice(rot, 1, len);
    Letters gv = v;
    gv.insert(gv.begin(), g);
    smaller(v);
    smaller(gv);
    result = coordinate({g}) * reduce_letters(v) - reduce_letters(gv);
  } else {
    // First repeated letter, at positions i < j.
    std::size_t ri = len, rj = len;
    for (std::size_t i = 0; i < len && ri == len; ++i) {
      for (std::size_t j = i + 1; j < len; ++j) {
        if (c[j] == c[i]) {
          ri = i;
          rj = j;
          break;
        }
      }
    }
    if (ri < len) {
      // R2: c ~ g u g v.
      const Letters rot = rotated(c, ri);
      const std::size_t j = rj - ri;
      const Letters g{rot[0]};
      const Letters u = slice(rot, 1, j);
      const Letters v = slice(rot, j + 1, len);
      const Letters gu = concat({&g, &u});
      const Letters gv = concat({&g, &v});
      const Letters uinv = invert(u);
      const Letters uv = concat({&uinv, &v});
      smaller(gu);
      smaller(gv);
      smaller(uv);
      result = reduce_letters(gu) * reduce_letters(gv) - reduce_letters(uv);
    } else {
      result = multilinear(c);
    }
  }
  memo_.emplace(c, result);
  return result;
}

MultiPoly TraceEngine::multilinear(const Letters& c) {
  const std::size_t len = c.size();
  if (len == 1) return coordinate({c[0]});
  if (len == 2) return coordinate({c[0], c[1]});
  if (len == 3) {
    // Canonical form starts with the smallest letter.
    if (c[1] < c[2]) return coordinate({c[0], c[1], c[2]});
    // R3: tr(acb) = t_a t_bc + t_b t_ac + t_c t_ab - t_a t_b t_c - t_abc.
    const int a = c[0], b = c[2], cc = c[1];
    const MultiPoly ta = coordinate({a}), tb = coordinate({b}), tc = coordinate({cc});
    return ta * coordinate({b, cc}) + tb * coordinate({a, cc}) + tc * coordinate({a, b}) - ta * tb * tc -
           coordinate({a, b, cc});
  }

  // Four or more distinct letters.  Each split relation reads
  //   tr(XYZ) + tr(XZY) = (terms on fewer letters),
  // so three orderings related pairwise form a solvable triangle.
  const auto first = split_partners(c);
  for (const auto& [q2, s12] : first) {
    const auto second = split_partners(q2);
    for (const auto& [q3, s13] : first) {
      if (q3 == q2) continue;
      auto hit = std::find_if(second.begin(), second.end(), [&](const auto& e) { return e.first == q3; });
      if (hit == second.end()) continue;
      const MultiPoly r12 = split_relation_rhs(c, s12);
      const MultiPoly r13 = split_relation_rhs(c, s13);
      const MultiPoly r23 = split_relation_rhs(q2, hit->second);
      return (r12 + r13 - r23).scaled(Rational(1, 2));
    }
  }
  return extended_coordinate(c);
}

std::vector<std::pair<TraceEngine::Letters, TraceEngine::Split>> TraceEngine::split_partners(const Letters& c) const {
  std::vector<std::pair<Letters, Split>> out;
  std::set<Letters> seen;
  const std::size_t len = c.size();
  for (std::size_t r = 0; r < len; ++r) {
    const Letters rot = rotated(c, r);
    for (std::size_t i = 1; i + 1 < len; ++i) {
      for (std::size_t j = i + 1; j < len; ++j) {
        const Letters x = slice(rot, 0, i), y = slice(rot, i, j), z = slice(rot, j, len);
        Letters partner = canonical(concat({&x, &z, &y}));
        if (partner == c || !seen.insert(partner).second) continue;
        out.emplace_back(std::move(partner), Split{r, i, j});
      }
    }
  }
  return out;
}

MultiPoly TraceEngine::split_relation_rhs(const Letters& c, const Split& s) {
  const Letters rot = rotated(c, s.rotation);
  const Letters x = slice(rot, 0, s.first), y = slice(rot, s.first, s.second), z = slice(rot, s.second, rot.size());
  const MultiPoly tx = reduce_letters(x), ty = reduce_letters(y), tz = reduce_letters(z);
  return tx * reduce_letters(concat({&y, &z})) + ty * reduce_letters(concat({&x, &z})) +
         tz * reduce_letters(concat({&x, &y})) - tx * ty * tz;
}

MultiPoly TraceEngine::coordinate(std::vector<int> gens) {
  std::sort(gens.begin(), gens.end());
  std::vector<std::string> key;
  for (int g : gens) key.push_back(alphabet_[static_cast<std::size_t>(g - 1)]);
  const std::string name = coordinate_name(key, all_single_char(alphabet_));
  Exponents e(base_vars_.size(), 0);
  const auto idx = static_cast<std::size_t>(std::find(base_vars_.begin(), base_vars_.end(), name) - base_vars_.begin());
  e[idx] = 1;
  MultiPoly::TermMap t;
  t.emplace(std::move(e), Rational(1));
  return MultiPoly(base_vars_, std::move(t));
}

MultiPoly TraceEngine::extended_coordinate(const Letters& c) {
  TraceCoordinate coord;
  coord.extended = true;
  coord.word = to_word(c);
  for (int x : c) coord.key.push_back(alphabet_[static_cast<std::size_t>(std::abs(x) - 1)]);
  std::string name = "t_";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) name += '_';
    name += alphabet_[static_cast<std::size_t>(c[i] - 1)];
  }
  coord.variable = name + "_x";
  coordinates_[coord.variable] = coord;
  return MultiPoly::constant(0, base_vars_) + MultiPoly::variable(coord.variable);
}

TraceExpression reduce_trace(const Word& w, const std::vector<std::string>& alphabet) {
  TraceEngine engine(alphabet);
  return engine.reduce(w);
}

double oracle_check(const Word& w, const std::vector<std::string>& alphabet, int trials, std::uint64_t seed) {
  TraceEngine engine(alphabet);
  const TraceExpression expr = engine.reduce(w);
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::map<std::string, Mat2C> images;
    for (const auto& g : alphabet) images[g] = random_sl2(rng);
    Mat2C direct;
    for (const auto& letter : w.letters()) direct *= letter.exp > 0 ? images[letter.gen] : images[letter.gen].adjugate();
    const cplx exact = direct.trace();
    const cplx approx = expr.evaluate(images);
    worst = std::max(worst, std::abs(exact - approx) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

double r3_identity_error(int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng), c = random_sl2(rng);
    const cplx lhs = (a * c * b).trace() + (a * b * c).trace();
    const cplx rhs = a.trace() * (b * c).trace() + b.trace() * (a * c).trace() + c.trace() * (a * b).trace() -
                     a.trace() * b.trace() * c.trace();
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

std::vector<Word> character_testset(const std::vector<std::string>& alphabet) {
  if (alphabet.size() > kMaxTraceAlphabet) {
    throw Error(ErrorKind::AlphabetTooLarge, fmt::format("trace alphabet has {} generators (max {})", alphabet.size(), kMaxTraceAlphabet));
  }
  const std::size_t n = alphabet.size();
  std::vector<Word> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Word::generator(alphabet[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(Word::generator(alphabet[i]) * Word::generator(alphabet[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        out.push_back(Word::generator(alphabet[i]) * Word::generator(alphabet[j]) * Word::generator(alphabet[k]));
  return out;
}

}  // namespace charmut
