#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charmut/rep.hpp"
#include "charmut/word.hpp"

namespace charmut {

enum class SurfaceId { S3, S4, T1, T2, G2 };

std::string_view to_string(SurfaceId id);
SurfaceId parse_surface_id(std::string_view name);

/// tr(lhs) = tr(rhs) is required for tau-invariance.
struct TraceCondition {
  Word lhs;
  Word rhs;
};

/// One of the five standard mutation surfaces.  Where the involution is only
/// partly known, `tau_images` holds the known generator images and membership
/// is decided by `trace_conditions` alone.
struct SymmetricSurface {
  SurfaceId id{};
  std::vector<std::string> generators;
  std::map<std::string, Word, std::less<>> tau_images;
  bool tau_total = false;
  std::vector<TraceCondition> trace_conditions;

  std::string name() const { return std::string(to_string(id)); }
  /// Throws TauIncomplete for a partial involution.
  Endomorphism tau() const;
};

const std::vector<SymmetricSurface>& builtin_catalog();
const SymmetricSurface& catalog_surface(SurfaceId id);

struct SurfaceEmbedding {
  SymmetricSurface surface;
  /// Surface generator -> word in the ambient generators.
  std::map<std::string, Word, std::less<>> words;

  Word embed(const Word& surface_word) const;
};

/// rep pulled back to the surface's free group.
Representation restrict_to_surface(const Representation& rep, const SurfaceEmbedding& emb);

struct InvarianceResult {
  bool invariant = false;
  double residual = 0.0;
  bool by_conditions = false;
};

/// Character of rep on the surface compared with its tau-precomposition, or
/// the trace conditions when tau is partial.  PSL2 reps compare squared traces.
InvarianceResult tau_invariance_check(const Representation& rep, const SurfaceEmbedding& emb, const Tolerances& tol = {});

/// Lift search for a partial involution: first sign assignment (lift-search
/// order) whose SL2 traces satisfy every trace condition.  Throws NotFound.
Representation find_tau_invariant_lift(const Representation& rep, const SymmetricSurface& surface, const Tolerances& tol = {});

/// Fraction of `samples` random SL2 tuples on the surface generators that
/// satisfy its trace conditions.
double condition_hit_fraction(const SymmetricSurface& surface, int samples, Rng& rng, const Tolerances& tol = {});

struct SeparatingSplitting {
  Presentation minus;
  Presentation plus;
  SurfaceId surface{};
  std::map<std::string, Word, std::less<>> minus_words;
  std::map<std::string, Word, std::less<>> plus_words;

  /// Generators of both sides; relators of both plus the identifications.
  Presentation amalgam() const;
  /// Same, but with minus-side words precomposed by tau.
  Presentation mutant() const;
  void validate() const;
};

/// pi_1(M) = < A, k | k^-1 a1_i k = a2_i >, with the i-th edge source equal
/// to the embedding of the i-th surface generator.
struct HnnSplitting {
  Presentation group;
  std::string stable;
  std::vector<std::pair<Word, Word>> edges;
  SurfaceId surface{};
  std::map<std::string, Word, std::less<>> surface_words;

  std::vector<std::string> base_generators() const;
  SurfaceEmbedding embedding() const;
  /// Relators of the target group: k^-1 tau(a1_i) k a2_i^-1 plus base relators.
  Presentation mutant() const;
  /// Splitting of the target group, whose mutation by tau returns here.
  HnnSplitting mutant_split() const;
  void validate() const;
};

struct MutationResult {
  Representation rep;
  /// The other sign of X; SL2 mutants are defined up to this choice.
  Representation alternate;
  Mat2C conjugator;
  double relator_residual = 0.0;
};

MutationResult mutate_separating(const Representation& rep, const SeparatingSplitting& split, const Tolerances& tol = {});
MutationResult mutate_hnn(const Representation& rep, const HnnSplitting& split, const Tolerances& tol = {});

}  // namespace charmut
