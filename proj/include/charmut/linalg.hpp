#pragma once

#include <array>
#include <vector>

#include "charmut/mat2.hpp"

namespace charmut {

using Row4 = std::array<cplx, 4>;
using Vec4 = std::array<cplx, 4>;

/// Null space of an m x 4 complex system by complete-pivoting elimination.
/// A pivot counts as zero when its magnitude is below rel_tol times the
/// largest entry of the input; the returned basis vectors have unit max-norm.
std::vector<Vec4> null_space(std::vector<Row4> rows, double rel_tol);

/// Rows of the linear system X*m1 - m2*X = 0 in the row-major entries of X.
std::array<Row4, 4> intertwiner_rows(const Mat2C& m1, const Mat2C& m2);

inline Mat2C to_matrix(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace charmut
