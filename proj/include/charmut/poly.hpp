#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace charmut {

using Rational = mpq_class;
using Exponents = std::vector<int>;

/// Graded lexicographic order; the first declared variable is most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q.  Variables are named and ordered by
/// declaration; binary operations merge variable lists by name (left operand's
/// order first).  No zero coefficient is ever stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);
  MultiPoly(std::vector<std::string> vars, TermMap terms);

  static MultiPoly constant(const Rational& c, std::vector<std::string> vars = {});
  static MultiPoly variable(const std::string& name);

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  std::optional<std::size_t> var_index(std::string_view name) const;
  bool depends_on(std::string_view name) const { return degree(name) > 0; }

  /// Degree in one variable; -1 for the zero polynomial.
  int degree(std::string_view var) const;
  int total_degree() const;

  /// Same polynomial over a different variable list.  Throws VariableAbsent
  /// when a used variable is missing from `vars`.
  MultiPoly with_variables(std::vector<std::string> vars) const;
  /// Drops variables that do not occur.
  MultiPoly trimmed() const;

  /// Coefficient list in `var`: entry k is the coefficient of var^k.
  std::vector<MultiPoly> coefficients_in(std::string_view var) const;
  MultiPoly leading_coefficient_in(std::string_view var) const;
  MultiPoly derivative(std::string_view var) const;

  const Rational& leading_coefficient() const;
  const Exponents& leading_exponents() const;

  /// Homogenize with a new variable appended last.
  MultiPoly homogenized(const std::string& new_var) const;
  /// Homogeneous part of top total degree.
  MultiPoly top_form() const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;
  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& point) const;
  /// Polynomial substitution var -> value.
  MultiPoly substitute(std::string_view var, const MultiPoly& value) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned n) const;

  std::string to_string() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  /// Structural equality after aligning variable lists.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  void add_term(const Exponents& e, const Rational& c);
  friend std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b);

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b);

/// Exact quotient; throws InexactDivision when a remainder is left.
MultiPoly divide_exact(const MultiPoly& p, const MultiPoly& d);

/// Determinant of the Sylvester matrix in `var` (fraction-free Bareiss).
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var);

/// Integer-primitive with positive leading coefficient; zero stays zero.
MultiPoly normalize_unit(const MultiPoly& p);
bool equal_up_to_unit(const MultiPoly& p, const MultiPoly& q);

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);
/// p / gcd(p, dp/dv_1, ..., dp/dv_n), normalized; constants map to 1.
MultiPoly squarefree(const MultiPoly& p);

/// Quotient of polynomials kept gcd-reduced, with an integer-primitive
/// denominator whose leading coefficient is positive.
class RationalFn {
 public:
  RationalFn() : num_(), den_(MultiPoly::constant(1)) {}
  RationalFn(MultiPoly num);  // NOLINT(google-explicit-constructor)
  RationalFn(MultiPoly num, MultiPoly den);

  const MultiPoly& numerator() const noexcept { return num_; }
  const MultiPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Numerator as a polynomial when the denominator is constant.
  MultiPoly as_polynomial() const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;
  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& point) const;

  RationalFn operator-() const;
  RationalFn inverse() const;
  RationalFn pow(int n) const;

  std::string to_string() const;

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend bool operator==(const RationalFn& a, const RationalFn& b);

 private:
  MultiPoly num_;
  MultiPoly den_;
};

using Bindings = std::map<std::string, RationalFn, std::less<>>;

/// Exact composition; unbound variables stay fixed.
RationalFn substitute(const MultiPoly& p, const Bindings& bindings);
RationalFn substitute(const RationalFn& f, const Bindings& bindings);

/// Infix syntax with + - * / ^ and parentheses, e.g. `1 - y - y^2 + (-1 + y)*x^2`.
/// Variables listed in `var_order` come first in that order, others follow in
/// order of appearance.
RationalFn parse_rational(std::string_view text, const std::vector<std::string>& var_order = {});
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& var_order = {});

std::string to_string(const Rational& q);

}  // namespace charmut
