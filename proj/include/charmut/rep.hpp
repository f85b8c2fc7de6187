#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charmut/mat2.hpp"
#include "charmut/word.hpp"

namespace charmut {

/// Named numeric tolerances; every comparison in the numeric layer uses one.
struct Tolerances {
  double relator = 1e-8;
  double character = 1e-6;
  double rank = 1e-7;
};

enum class RepMode { SL2, PSL2 };

std::string_view to_string(RepMode m);

/// Generator images of a presentation.  PSL2 representations are stored as
/// SL2 matrices; relators then only need to map to +E or -E.
struct Representation {
  Presentation presentation;
  std::map<std::string, Mat2C, std::less<>> images;
  RepMode mode = RepMode::SL2;

  const Mat2C& image(std::string_view gen) const;
};

Mat2C evaluate(const Representation& rep, const Word& w);
Mat2C evaluate(const std::map<std::string, Mat2C, std::less<>>& images, const Word& w);

/// Max over relators of the distance to E (SL2) or to the nearer of +E, -E (PSL2).
double relator_residual(const Representation& rep);
/// Throws RelatorResidualTooLarge above `tol`.
void require_relators(const Representation& rep, double tol);

/// Traces on a word list; PSL2 samples hold squared traces.
struct CharacterSample {
  std::vector<Word> words;
  std::vector<cplx> values;
  bool squared = false;
};

CharacterSample character_of(const Representation& rep, const std::vector<Word>& words);
CharacterSample character_of(const std::vector<Mat2C>& images, const std::vector<Word>& words, bool squared);
/// Max |a_i - b_i|; the samples must be over the same words.
double character_distance(const CharacterSample& a, const CharacterSample& b);

/// No common eigenvector among the non-central matrices.  Throws
/// AllImagesCentral when every matrix is +-E.
bool is_irreducible(const std::vector<Mat2C>& images, double tol = 1e-7);
bool is_irreducible(const Representation& rep, const std::vector<Word>& words, double tol = 1e-7);

/// X with X * m1[i] = m2[i] * X for all i, det X = 1, sign fixed so that the
/// largest entry has argument in (-pi/2, pi/2].  Throws NonUniqueConjugator
/// (nullity >= 2) or NoConjugator (nullity 0).
Mat2C conjugator_solve(const std::vector<Mat2C>& m1, const std::vector<Mat2C>& m2, const Tolerances& tol = {});
Mat2C conjugator_solve(const Representation& rep1, const Representation& rep2, const std::vector<Word>& words,
                       const Tolerances& tol = {});
/// Applies the deterministic sign rule to a unimodular matrix.
Mat2C fix_sign(const Mat2C& x);

enum class CentraliserClass { Trivial, Order2, KleinianFour, PositiveDimensional };
std::string_view to_string(CentraliserClass c);

/// PSL2 centraliser of the subgroup generated by `images`: for each sign
/// pattern eps, solve Y m = eps(m) m Y and count patterns with invertible
/// solutions.
CentraliserClass centraliser_classify(const std::vector<Mat2C>& images, double rank_tol = 1e-7);
CentraliserClass centraliser_classify(const Representation& rep, const std::vector<Word>& words,
                                      double rank_tol = 1e-7);
/// Two-generator rule: nontrivial iff at least two of (tr a)^2, (tr b)^2,
/// (tr ab)^2 vanish.
bool axes_rule_nontrivial(const Mat2C& a, const Mat2C& b, double tol = 1e-7);

/// Generator images multiplied by eps.  Throws IllDefinedSign when eps does
/// not respect relator parity.
Representation sign_twist(const Representation& rep, const SignCharacter& eps);

/// rep precomposed with an endomorphism of its generators: g -> rep(tau(g)).
Representation precompose(const Representation& rep, const Endomorphism& tau);

/// First sign assignment (identity, then increasing flip count, ties by
/// generator order) whose SL2 character on the test set is tau-invariant.
/// Throws NotFound.
Representation find_tau_invariant_lift(const Representation& rep, const Endomorphism& tau, const Tolerances& tol = {});

/// Sign assignments to n generators in lift-search order, as flip masks.
std::vector<std::vector<bool>> lift_search_order(std::size_t n);

struct G2Report {
  bool liftable = false;
  bool tau_invariant = false;
  bool five_conditions = false;
  double relator_residual = 0.0;
  double tau_residual = 0.0;
  /// Squared traces of a d^-1, b c^-1, a b d^-1, b^-1 c d, a c d.
  std::array<cplx, 5> five{};
};

const Presentation& g2_presentation();
const Endomorphism& g2_tau();
/// The five words of the non-liftable condition list.
const std::vector<Word>& g2_condition_words();

/// Throws NotASurfaceGroupRep unless [A,B][C,D] = +-E within 1e-7.
G2Report g2_nonliftable_test(const Representation& rep, const Tolerances& tol = {});

/// Genus-two representation with [A,B][C,D] = -E (nonliftable) or +E.
/// Given random A, B and T = -+[A,B]^-1, C is drawn from the hyperplane
/// where C D C^-1 = T D is solvable, and D from the resulting null space.
Representation sample_g2(Rng& rng, bool nonliftable, const Tolerances& tol = {});

}  // namespace charmut
