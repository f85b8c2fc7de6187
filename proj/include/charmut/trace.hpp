#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "charmut/mat2.hpp"
#include "charmut/poly.hpp"
#include "charmut/word.hpp"

namespace charmut {

inline constexpr std::size_t kMaxTraceAlphabet = 8;

/// A trace function used as a polynomial variable: tr of an ascending product
/// of one to three distinct generators, or an `extended` multilinear residue
/// that the rewriting could not eliminate.
struct TraceCoordinate {
  std::vector<std::string> key;
  bool extended = false;
  Word word;
  std::string variable;
};

struct TraceExpression {
  MultiPoly poly;
  /// One entry per variable of `poly`, in the same order.
  std::vector<TraceCoordinate> coordinates;

  bool has_extended() const;
  std::complex<double> evaluate(const std::map<std::string, Mat2C>& images) const;
  std::string to_string() const { return poly.to_string(); }
};

/// Rewrites tr(w) for a free-group word into Fricke/Vogt coordinates.
///
/// Rules act on cyclically reduced words in canonical form (least rotation of
/// w or w^-1, preferring the orientation with fewer inverse letters):
///   R1  tr(g^-1 v) = tr(g) tr(v) - tr(g v)
///   R2  tr(g u g v) = tr(g u) tr(g v) - tr(u^-1 v)
///   R3  tr(X Y Z) + tr(X Z Y) = tr X tr YZ + tr Y tr XZ + tr Z tr XY - tr X tr Y tr Z
/// The measure (length, inverse count) drops lexicographically under R1/R2,
/// and R3 only produces words on fewer letters.  Multilinear words on four or
/// more letters are solved from three R3 relations forming a triangle among
/// their cyclic orderings; failing that, an extended coordinate is emitted.
///
/// The memo cache belongs to this instance; use one engine per thread.
class TraceEngine {
 public:
  explicit TraceEngine(std::vector<std::string> alphabet);

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  TraceExpression reduce(const Word& w);

  std::size_t memo_size() const noexcept { return memo_.size(); }
  void clear_memo() { memo_.clear(); }

 private:
  using Letters = std::vector<int>;
  struct LettersHash {
    std::size_t operator()(const Letters& w) const noexcept;
  };
  struct Split {
    std::size_t rotation, first, second;
  };

  MultiPoly reduce_letters(const Letters& w);
  MultiPoly reduce_canonical(const Letters& c);
  MultiPoly multilinear(const Letters& c);
  MultiPoly split_relation_rhs(const Letters& c, const Split& s);
  std::vector<std::pair<Letters, Split>> split_partners(const Letters& c) const;
  MultiPoly coordinate(std::vector<int> gens);
  MultiPoly extended_coordinate(const Letters& c);

  Letters to_letters(const Word& w) const;
  Word to_word(const Letters& w) const;

  std::vector<std::string> alphabet_;
  std::vector<std::string> base_vars_;
  std::map<std::string, TraceCoordinate> coordinates_;
  std::unordered_map<Letters, MultiPoly, LettersHash> memo_;
};

/// One-shot convenience wrapper around a fresh engine.
TraceExpression reduce_trace(const Word& w, const std::vector<std::string>& alphabet);

/// Max relative error |tr(w) - expr| / max(1, |tr(w)|) of the rewritten
/// expression against direct matrix products on random SL2 tuples.
double oracle_check(const Word& w, const std::vector<std::string>& alphabet, int trials, std::uint64_t seed);

/// Max error of the three-letter reordering identity on random triples.
double r3_identity_error(int trials, std::uint64_t seed);

/// Ascending products of 1, 2 and 3 distinct generators.
std::vector<Word> character_testset(const std::vector<std::string>& alphabet);

}  // namespace charmut
