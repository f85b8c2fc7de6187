#include "charmut/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace charmut {

std::vector<Vec4> null_space(std::vector<Row4> rows, double rel_tol) {
  double scale = 0.0;
  for (const auto& r : rows)
    for (const auto& z : r) scale = std::max(scale, std::abs(z));
  std::array<std::size_t, 4> col{0, 1, 2, 3};
  if (scale == 0.0) {
    std::vector<Vec4> basis;
    for (std::size_t k = 0; k < 4; ++k) {
      Vec4 e{};
      e[k] = 1.0;
      basis.push_back(e);
    }
    return basis;
  }
  const double cut = rel_tol * scale;
  std::size_t rank = 0;
  for (; rank < 4 && rank < rows.size(); ++rank) {
    std::size_t pr = rank, pc = rank;
    double best = -1.0;
    for (std::size_t i = rank; i < rows.size(); ++i) {
      for (std::size_t j = rank; j < 4; ++j) {
        if (std::abs(rows[i][j]) > best) {
          best = std::abs(rows[i][j]);
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= cut) break;
    std::swap(rows[rank], rows[pr]);
    if (pc != rank) {
      for (auto& r : rows) std::swap(r[rank], r[pc]);
      std::swap(col[rank], col[pc]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank) continue;
      const cplx f = rows[i][rank] / rows[rank][rank];
      if (f == cplx{}) continue;
      for (std::size_t j = rank; j < 4; ++j) rows[i][j] -= f * rows[rank][j];
    }
  }
  // Reduced form: pivot columns 0..rank-1, free columns rank..3.
  std::vector<Vec4> basis;
  for (std::size_t free = rank; free < 4; ++free) {
    Vec4 permuted{};
    permuted[free] = 1.0;
    for (std::size_t i = 0; i < rank; ++i) permuted[i] = -rows[i][free] / rows[i][i];
    Vec4 v{};
    for (std::size_t k = 0; k < 4; ++k) v[col[k]] = permuted[k];
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    for (auto& z : v) z /= m;
    basis.push_back(v);
  }
  return basis;
}

std::array<Row4, 4> intertwiner_rows(const Mat2C& m1, const Mat2C& m2) {
  const auto e1 = m1.entries();
  const auto e2 = m2.entries();
  auto at = [](const std::array<cplx, 4>& e, std::size_t i, std::size_t j) { return e[2 * i + j]; };
  std::array<Row4, 4> rows{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Row4& r = rows[2 * i + j];
      for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t q = 0; q < 2; ++q) {
          cplx v{};
          if (p == i) v += at(e1, q, j);
          if (q == j) v -= at(e2, i, p);
          r[2 * p + q] = v;
        }
      }
    }
  }
  return rows;
}

}  // namespace charmut
