#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace charmut {

struct Syllable {
  std::string gen;
  int exp = 1;

  auto operator<=>(const Syllable&) const = default;
};

/// Element of a free group, stored run-length encoded and always freely
/// reduced: adjacent syllables never share a generator and no exponent is 0.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);

  static Word generator(std::string name, int exp = 1);

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  bool empty() const noexcept { return syllables_.empty(); }
  /// Sum of absolute exponents.
  std::size_t length() const noexcept;

  Word inverse() const;
  Word pow(int n) const;
  Word operator*(const Word& rhs) const;

  /// Freely reduce, then cancel first-against-last syllables until stable.
  Word cyclically_reduced() const;

  int exponent_sum(std::string_view gen) const;
  /// Expanded letter sequence, e.g. a^2 b^-1 -> {(a,+1), (a,+1), (b,-1)}.
  std::vector<Syllable> letters() const;

  std::string to_string() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Syllable> syllables_;
};

bool is_generator_name(std::string_view name);

/// Tokens `g` or `g^k` separated by whitespace; `1` denotes the identity.
Word parse_word(std::string_view text, std::span<const std::string> alphabet);

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<Word> relators;

  bool has_generator(std::string_view g) const;
  std::size_t index_of(std::string_view g) const;
  /// Throws if a relator uses an undeclared generator.
  void validate() const;
};

/// Homomorphism between free groups given by generator images.
class Endomorphism {
 public:
  Endomorphism() = default;
  Endomorphism(std::vector<std::string> domain, std::vector<std::string> target,
               std::map<std::string, Word> images);

  static Endomorphism identity(const std::vector<std::string>& gens);

  const std::vector<std::string>& domain() const noexcept { return domain_; }
  const std::vector<std::string>& target() const noexcept { return target_; }
  const Word& image(std::string_view gen) const;
  bool is_endomorphism() const { return domain_ == target_; }

  Word apply(const Word& w) const;
  /// (*this) ∘ inner.
  Endomorphism compose(const Endomorphism& inner) const;

 private:
  std::vector<std::string> domain_;
  std::vector<std::string> target_;
  std::map<std::string, Word, std::less<>> images_;
};

Word apply_endo(const Endomorphism& e, const Word& w);

class SignCharacter {
 public:
  SignCharacter() = default;
  explicit SignCharacter(std::map<std::string, int> values);

  int value(std::string_view gen) const;
  int operator()(const Word& w) const;
  bool is_trivial() const;
  const std::map<std::string, int, std::less<>>& values() const noexcept { return values_; }
  std::string to_string() const;

 private:
  std::map<std::string, int, std::less<>> values_;
};

/// H_1 as a direct sum of cyclic factors.  `factor_orders` holds one entry per
/// column of the Smith form (1 = trivial factor, 0 = copy of Z), and
/// `generator_coordinates[g]` is the image of generator g in that basis.
struct Abelianization {
  std::vector<mpz_class> factor_orders;
  std::vector<std::vector<mpz_class>> generator_coordinates;

  /// Invariant factors with trivial ones dropped: torsion ascending, then zeros.
  std::vector<std::int64_t> invariants() const;
  /// Order of a generator's image; 0 means infinite order.
  mpz_class order_of(std::size_t generator_index) const;
};

Abelianization abelianize(const Presentation& p);
std::vector<std::int64_t> abelianization_invariants(const Presentation& p);

bool sign_character_well_defined(const Presentation& p, const SignCharacter& eps);
/// All homomorphisms to {+1,-1}, ordered by their bit pattern over the
/// generators (first generator is the least significant bit).
std::vector<SignCharacter> enumerate_sign_characters(const Presentation& p);

}  // namespace charmut
