#include "charmut/mat2.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace charmut {

Mat2C Mat2C::inverse() const {
  const cplx inv_det = 1.0 / det();
  return adjugate() * inv_det;
}

Mat2C Mat2C::normalized() const { return *this * (1.0 / std::sqrt(det())); }

double Mat2C::max_norm() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

std::string Mat2C::to_string() const {
  auto f = [](cplx z) { return fmt::format("{:.6g}{:+.6g}i", z.real(), z.imag()); };
  return fmt::format("[[{}, {}], [{}, {}]]", f(a), f(b), f(c), f(d));
}

double distance_to_pm_identity(const Mat2C& m) {
  return std::min(distance(m, Mat2C::identity()), distance(m, -Mat2C::identity()));
}

Mat2C commutator(const Mat2C& x, const Mat2C& y) { return x * y * x.adjugate() * y.adjugate(); }

cplx random_box_entry(Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double re = unit(rng);
  const double im = unit(rng);
  return {re, im};
}

Mat2C random_sl2(Rng& rng) {
  while (true) {
    const cplx p = random_box_entry(rng);
    const cplx q = random_box_entry(rng);
    const cplx r = random_box_entry(rng);
    if (std::abs(p) < 0.1) continue;
    return {p, q, r, (1.0 + q * r) / p};
  }
}

}  // namespace charmut
