#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace charmut {

using cplx = std::complex<double>;

/// Complex 2x2 matrix [[a, b], [c, d]].
struct Mat2C {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mat2C identity() { return {}; }
  static Mat2C from_entries(const std::array<cplx, 4>& e) { return {e[0], e[1], e[2], e[3]}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  Mat2C adjugate() const { return {d, -b, -c, a}; }
  Mat2C inverse() const;
  /// Rescale by a square root of the determinant so that det = 1.
  Mat2C normalized() const;
  std::array<cplx, 4> entries() const { return {a, b, c, d}; }
  double max_norm() const;

  Mat2C operator*(const Mat2C& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2C operator+(const Mat2C& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2C operator-(const Mat2C& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2C operator-() const { return {-a, -b, -c, -d}; }
  Mat2C operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2C& operator*=(const Mat2C& o) { return *this = *this * o; }

  std::string to_string() const;
};

/// Max-norm distance.
inline double distance(const Mat2C& x, const Mat2C& y) { return (x - y).max_norm(); }
/// min(|M - E|, |M + E|).
double distance_to_pm_identity(const Mat2C& m);
/// x y x^-1 y^-1 for unimodular arguments.
Mat2C commutator(const Mat2C& x, const Mat2C& y);

using Rng = std::mt19937_64;

cplx random_box_entry(Rng& rng);
/// Entries with real and imaginary parts uniform in [-1, 1]; the lower-right
/// entry is solved for det = 1, resampling while the pivot is below 0.1.
Mat2C random_sl2(Rng& rng);

}  // namespace charmut
