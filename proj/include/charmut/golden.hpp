#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "charmut/poly.hpp"
#include "charmut/report.hpp"
#include "charmut/rep.hpp"

namespace charmut::fig8 {

/// |P(x, y)| divided by max(1, sum of |term|), so that large coordinates do
/// not inflate the residual.
double relative_residual(const MultiPoly& p, cplx x, cplx y);

struct CharacterSweep {
  std::vector<Representation> reps;
  /// (tr t, tr a) of each rep.
  std::vector<std::pair<cplx, cplx>> points;
  std::size_t attempts = 0;
  /// Max relative residual of `variety` over the points.
  double max_residual = 0.0;
};

/// Irreducible reps of `group` whose characters are pairwise at least 1e-6
/// apart, each attempt seeded with seed + attempt index.  Stops at `count`
/// characters or after `max_attempts`.
CharacterSweep sweep_characters(const Presentation& group, const MultiPoly& variety, std::size_t count,
                                std::uint64_t seed, std::size_t max_attempts = 400);

/// Every explicit claim about the figure-eight knot and its sister, checked.
Report golden(std::uint64_t seed, const Tolerances& tol = {});

}  // namespace charmut::fig8
