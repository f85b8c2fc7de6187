#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charmut/mutation.hpp"
#include "charmut/poly.hpp"
#include "charmut/rep.hpp"
#include "charmut/word.hpp"

namespace charmut {

inline constexpr int kMaxCurveDegree = 6;

/// Nonzero squarefree polynomial in two named variables.
class PlaneCurve {
 public:
  /// Stores squarefree(poly) over the variable pair; throws InvariantViolation
  /// for the zero polynomial or a polynomial in other variables.
  PlaneCurve(const MultiPoly& poly, std::array<std::string, 2> vars, std::string ambient = {});

  const MultiPoly& poly() const noexcept { return poly_; }
  const std::array<std::string, 2>& vars() const noexcept { return vars_; }
  const std::string& ambient() const noexcept { return ambient_; }
  int degree() const { return poly_.total_degree(); }

 private:
  MultiPoly poly_;
  std::array<std::string, 2> vars_;
  std::string ambient_;
};

/// Pair of rational functions in the source curve's variables.
struct RationalPlaneMap {
  std::array<RationalFn, 2> components;
};

/// Complex roots of a univariate polynomial, with multiplicity.  Degrees up to
/// two are solved in closed form, higher degrees by Durand-Kerner iteration.
std::vector<cplx> univariate_roots(const MultiPoly& p);

/// (x, y) -> (x^2, y).
std::pair<cplx, cplx> quotient_map(std::pair<cplx, cplx> point);
/// Image curve in (new_var, y): direct substitution when only even powers of
/// x occur, otherwise the resultant with new_var - x^2.
PlaneCurve quotient_map(const PlaneCurve& c, const std::string& new_var = "X");

/// Reducible characters of a one-relator-style group restricted to tr of one
/// generator.  For a generator of finite order d in H_1 this is the squarefree
/// part of Res_l(l^d - 1, l^2 - y l + 1); infinite order imposes no constraint
/// and yields the zero polynomial.
MultiPoly abelian_locus(const Presentation& p, std::string_view generator, const std::string& var = "y");

struct CurveAnalysis {
  int degree = 0;
  bool smooth_affine = false;
  bool smooth_at_infinity = false;
  /// False when the affine test had to fall back to numeric root checks.
  bool smoothness_certified = true;
  std::optional<int> genus;
  /// Parameter variable "s".
  std::optional<std::pair<RationalFn, RationalFn>> parametrization;
};

CurveAnalysis curve_analyze(const PlaneCurve& c);

struct ExceptionalPoint {
  cplx first;
  cplx second;
};

struct BirationalReport {
  bool pushforward_zero = false;
  bool inverse_pushforward_zero = false;
  bool roundtrip_identity = false;
  bool inverse_roundtrip_identity = false;
  /// Affine points of each curve where a denominator or the extra locus vanishes.
  std::size_t source_exceptional_count = 0;
  std::size_t target_exceptional_count = 0;
  std::vector<ExceptionalPoint> source_exceptional;
  std::vector<ExceptionalPoint> target_exceptional;
  RationalFn pushforward;
  RationalFn inverse_pushforward;

  bool pass() const {
    return pushforward_zero && inverse_pushforward_zero && roundtrip_identity && inverse_roundtrip_identity;
  }
};

/// Exact check that f maps source into target and g undoes it, modulo the
/// curve equations.  Both curves must be of degree one in their first
/// variable.  `extra_locus` (a polynomial in the curves' second variable, or
/// zero) adds points where the maps are undefined a priori.  Throws
/// UnsupportedDegree, or PushforwardNonzero when f does not land on target.
BirationalReport birational_verify(const RationalPlaneMap& f, const RationalPlaneMap& g, const PlaneCurve& source,
                                   const PlaneCurve& target, const MultiPoly& extra_locus = {});

struct InfinityPoint {
  /// Projective point [first : second : 0].
  cplx first;
  cplx second;
  int multiplicity = 1;
  bool exact = true;
  bool first_unbounded = false;
  bool second_unbounded = false;
};

struct IdealPointReport {
  std::vector<InfinityPoint> points;
  int total_multiplicity() const;
};

IdealPointReport ideal_scan(const PlaneCurve& c);

/// Unboundedness of each coordinate along a sampled parameter path.
struct PathScan {
  bool first_unbounded = false;
  bool second_unbounded = false;
  double max_first = 0.0;
  double max_second = 0.0;
};

PathScan path_scan(const std::function<std::pair<cplx, cplx>(cplx)>& path, const std::vector<cplx>& params,
                   double threshold = 1e6);

struct ConditionCheck {
  bool pass = false;
  double residual = 0.0;
};

struct CConditionReport {
  ConditionCheck c1;
  ConditionCheck c2;
  ConditionCheck c3;
  struct {
    bool nonconstant = false;
    bool blowup_detected = false;
    double max_trace = 0.0;
  } c4;
  /// Whether every sampled image of the full group commutes.
  bool abelian_image = false;
  static constexpr bool c4_heuristic = true;
};

/// Character-level conditions along a family approaching a limit parameter,
/// for an HNN splitting: C1 bounds traces on the base group, C2 compares
/// traces across each edge, C3 asks the surface restriction to be reducible,
/// C4 looks for a nonconstant path on which some trace exceeds 1e6.
CConditionReport c_condition_check(const std::function<Representation(cplx)>& family, const HnnSplitting& split,
                                   const std::vector<cplx>& params);

}  // namespace charmut
