#include "charmut/word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "charmut/error.hpp"

namespace charmut {

namespace {

void push_reduced(std::vector<Syllable>& out, const Syllable& s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp += s.exp;
    if (out.back().exp == 0) out.pop_back();
  } else {
    out.push_back(s);
  }
}

}  // namespace

Word::Word(std::vector<Syllable> syllables) {
  syllables_.reserve(syllables.size());
  for (auto& s : syllables) push_reduced(syllables_, s);
}

Word Word::generator(std::string name, int exp) {
  return Word({Syllable{std::move(name), exp}});
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::size_t>(std::abs(s.exp));
  return n;
}

Word Word::inverse() const {
  std::vector<Syllable> out;
  out.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) out.push_back({it->gen, -it->exp});
  Word w;
  w.syllables_ = std::move(out);
  return w;
}

Word Word::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Word result;
  for (int i = 0; i < n; ++i) result = result * *this;
  return result;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  for (const auto& s : rhs.syllables_) push_reduced(w.syllables_, s);
  return w;
}

Word Word::cyclically_reduced() const {
  std::vector<Syllable> s = syllables_;
  while (s.size() >= 2 && s.front().gen == s.back().gen) {
    s.front().exp += s.back().exp;
    s.pop_back();
    if (s.front().exp == 0) s.erase(s.begin());
  }
  Word w;
  w.syllables_ = std::move(s);
  return w;
}

int Word::exponent_sum(std::string_view gen) const {
  int total = 0;
  for (const auto& s : syllables_)
    if (s.gen == gen) total += s.exp;
  return total;
}

std::vector<Syllable> Word::letters() const {
  std::vector<Syllable> out;
  out.reserve(length());
  for (const auto& s : syllables_) {
    const int step = s.exp > 0 ? 1 : -1;
    for (int i = 0; i < std::abs(s.exp); ++i) out.push_back({s.gen, step});
  }
  return out;
}

std::string Word::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += s.gen;
    if (s.exp != 1) out += fmt::format("^{}", s.exp);
  }
  return out;
}

bool is_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Word parse_word(std::string_view text, std::span<const std::string> alphabet) {
  std::vector<Syllable> syllables;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    const auto caret = token.find('^');
    std::string name = token.substr(0, caret);
    if (!is_generator_name(name)) throw Error(ErrorKind::MalformedToken, fmt::format("'{}'", token));
    int exp = 1;
    if (caret != std::string::npos) {
      const std::string_view digits = std::string_view(token).substr(caret + 1);
      const char* first = digits.data();
      const char* last = digits.data() + digits.size();
      if (first != last && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, exp);
      if (digits.empty() || ec != std::errc{} || ptr != last)
        throw Error(ErrorKind::MalformedToken, fmt::format("'{}'", token));
      if (exp == 0) throw Error(ErrorKind::ZeroExponent, fmt::format("'{}'", token));
    }
    if (std::find(alphabet.begin(), alphabet.end(), name) == alphabet.end())
      throw Error(ErrorKind::UnknownGenerator, fmt::format("'{}' in '{}'", name, text));
    syllables.push_back({std::move(name), exp});
  }
  return Word(std::move(syllables));
}

bool Presentation::has_generator(std::string_view g) const {
  return std::find(generators.begin(), generators.end(), g) != generators.end();
}

std::size_t Presentation::index_of(std::string_view g) const {
  const auto it = std::find(generators.begin(), generators.end(), g);
  if (it == generators.end())
    throw Error(ErrorKind::UnknownGenerator, fmt::format("'{}' not in group {}", g, name));
  return static_cast<std::size_t>(it - generators.begin());
}

void Presentation::validate() const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!is_generator_name(generators[i]))
      throw Error(ErrorKind::MalformedToken, fmt::format("generator name '{}'", generators[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (generators[j] == generators[i])
        throw Error(ErrorKind::InvariantViolation, fmt::format("duplicate generator '{}'", generators[i]));
  }
  for (const auto& r : relators)
    for (const auto& s : r.syllables())
      if (!has_generator(s.gen))
        throw Error(ErrorKind::UnknownGenerator,
                    fmt::format("relator '{}' uses '{}' outside group {}", r.to_string(), s.gen, name));
}

Endomorphism::Endomorphism(std::vector<std::string> domain, std::vector<std::string> target,
                           std::map<std::string, Word> images)
    : domain_(std::move(domain)), target_(std::move(target)) {
  for (auto& [g, w] : images) {
    if (std::find(domain_.begin(), domain_.end(), g) == domain_.end())
      throw Error(ErrorKind::UnknownGenerator, fmt::format("image given for '{}' outside the domain", g));
    for (const auto& s : w.syllables())
      if (std::find(target_.begin(), target_.end(), s.gen) == target_.end())
        throw Error(ErrorKind::UnknownGenerator,
                    fmt::format("image of '{}' uses '{}' outside the target", g, s.gen));
    images_.emplace(g, std::move(w));
  }
  for (const auto& g : domain_)
    if (!images_.contains(g)) images_.emplace(g, Word::generator(g));
}

Endomorphism Endomorphism::identity(const std::vector<std::string>& gens) {
  return Endomorphism(gens, gens, {});
}

const Word& Endomorphism::image(std::string_view gen) const {
  const auto it = images_.find(gen);
  if (it == images_.end()) throw Error(ErrorKind::UnknownGenerator, fmt::format("'{}' not in domain", gen));
  return it->second;
}

Word Endomorphism::apply(const Word& w) const {
  Word out;
  for (const auto& s : w.syllables()) out = out * image(s.gen).pow(s.exp);
  return out;
}

Endomorphism Endomorphism::compose(const Endomorphism& inner) const {
  std::map<std::string, Word> images;
  for (const auto& g : inner.domain()) images.emplace(g, apply(inner.image(g)));
  return Endomorphism(inner.domain(), target_, std::move(images));
}

Word apply_endo(const Endomorphism& e, const Word& w) { return e.apply(w); }

SignCharacter::SignCharacter(std::map<std::string, int> values) {
  for (auto& [g, v] : values) {
    if (v != 1 && v != -1) throw Error(ErrorKind::InvariantViolation, fmt::format("sign value {} for '{}'", v, g));
    values_.emplace(g, v);
  }
}

int SignCharacter::value(std::string_view gen) const {
  const auto it = values_.find(gen);
  return it == values_.end() ? 1 : it->second;
}

int SignCharacter::operator()(const Word& w) const {
  int sign = 1;
  for (const auto& s : w.syllables())
    if (value(s.gen) == -1 && (s.exp % 2 != 0)) sign = -sign;
  return sign;
}

bool SignCharacter::is_trivial() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& kv) { return kv.second == 1; });
}

std::string SignCharacter::to_string() const {
  std::string out = "{";
  for (const auto& [g, v] : values_) {
    if (out.size() > 1) out += ", ";
    out += fmt::format("{}: {}", g, v > 0 ? "+1" : "-1");
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Smith normal form over Z.  Only the column transform is tracked, since it
// carries generators into the cyclic-factor basis.

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// column b -= q * column a
void axpy_column(IntMatrix& m, std::size_t b, std::size_t a, const mpz_class& q) {
  for (auto& row : m) row[b] -= q * row[a];
}

void negate_column(IntMatrix& m, std::size_t a) {
  for (auto& row : m) row[a] = -row[a];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Abelianization abelianize(const Presentation& p) {
  p.validate();
  const std::size_t rows = p.relators.size();
  const std::size_t cols = p.generators.size();
  IntMatrix a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = p.relators[i].exponent_sum(p.generators[j]);

  IntMatrix v(cols, std::vector<mpz_class>(cols));
  for (std::size_t j = 0; j < cols; ++j) v[j][j] = 1;

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    while (true) {
      // smallest nonzero |entry| in the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      std::swap(a[k], a[pi]);
      if (pj != k) {
        swap_columns(a, k, pj);
        swap_columns(v, k, pj);
      }
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        const mpz_class q = floor_div(a[i][k], a[k][k]);
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        const mpz_class q = floor_div(a[k][j], a[k][k]);
        axpy_column(a, j, k, q);
        axpy_column(v, j, k, q);
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      std::size_t bad_row = rows;
      for (std::size_t i = k + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[i][j] % a[k][k] != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      for (std::size_t j = k; j < cols; ++j) a[k][j] += a[bad_row][j];
    }
    if (k < rows && k < cols && a[k][k] < 0) {
      negate_column(a, k);
      negate_column(v, k);
    }
  }

  Abelianization result;
  result.factor_orders.assign(cols, 0);
  for (std::size_t k = 0; k < steps; ++k) result.factor_orders[k] = abs(a[k][k]);
  result.generator_coordinates.assign(cols, std::vector<mpz_class>(cols));
  for (std::size_t g = 0; g < cols; ++g)
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_class x = v[g][c];
      const mpz_class& d = result.factor_orders[c];
      if (d != 0) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
      result.generator_coordinates[g][c] = x;
    }
  return result;
}

std::vector<std::int64_t> Abelianization::invariants() const {
  std::vector<std::int64_t> torsion;
  std::size_t free_rank = 0;
  for (const auto& d : factor_orders) {
    if (d == 0) {
      ++free_rank;
    } else if (d != 1) {
      if (!d.fits_slong_p()) throw Error(ErrorKind::InvariantViolation, "invariant factor exceeds 64 bits");
      torsion.push_back(d.get_si());
    }
  }
  std::sort(torsion.begin(), torsion.end());
  torsion.insert(torsion.end(), free_rank, 0);
  return torsion;
}

mpz_class Abelianization::order_of(std::size_t generator_index) const {
  mpz_class order = 1;
  const auto& coords = generator_coordinates.at(generator_index);
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (coords[c] == 0) continue;
    const mpz_class& d = factor_orders[c];
    if (d == 0) return 0;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), coords[c].get_mpz_t());
    mpz_class part = d / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
  }
  return order;
}

std::vector<std::int64_t> abelianization_invariants(const Presentation& p) { return abelianize(p).invariants(); }

bool sign_character_well_defined(const Presentation& p, const SignCharacter& eps) {
  return std::all_of(p.relators.begin(), p.relators.end(), [&](const Word& r) { return eps(r) == 1; });
}

std::vector<SignCharacter> enumerate_sign_characters(const Presentation& p) {
  p.validate();
  const std::size_t n = p.generators.size();
  if (n > 24) throw Error(ErrorKind::AlphabetTooLarge, fmt::format("{} generators", n));
  // Kernel of the relator parity matrix over GF(2), by row reduction.
  std::vector<std::vector<int>> rows;
  for (const auto& r : p.relators) {
    std::vector<int> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = std::abs(r.exponent_sum(p.generators[j])) % 2;
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i][c] == 1)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] ^= rows[rank][j];
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<std::uint32_t> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) continue;
    std::uint32_t vec = 1u << f;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k)
      if (rows[k][f] == 1) vec |= 1u << pivot_cols[k];
    basis.push_back(vec);
  }
  std::vector<std::uint32_t> patterns;
  for (std::uint32_t combo = 0; combo < (1u << basis.size()); ++combo) {
    std::uint32_t vec = 0;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (combo & (1u << b)) vec ^= basis[b];
    patterns.push_back(vec);
  }
  std::sort(patterns.begin(), patterns.end());
  std::vector<SignCharacter> out;
  out.reserve(patterns.size());
  for (const auto pattern : patterns) {
    std::map<std::string, int> values;
    for (std::size_t j = 0; j < n; ++j) values[p.generators[j]] = (pattern >> j) & 1u ? -1 : 1;
    out.emplace_back(std::move(values));
  }
  return out;
}

}  // namespace charmut
