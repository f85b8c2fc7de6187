#include "charmut/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <fmt/format.h>

#include "charmut/error.hpp"

namespace charmut {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const Rational& q) { return q.get_str(); }

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly::MultiPoly(std::vector<std::string> vars, TermMap terms) : vars_(std::move(vars)) {
  for (auto& [e, c] : terms)
    if (c != 0) terms_.emplace(e, c);
}

MultiPoly MultiPoly::constant(const Rational& c, std::vector<std::string> vars) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p({name});
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                              terms_.begin()->first.end(),
                                                              [](int e) { return e == 0; }));
}

Rational MultiPoly::constant_term() const {
  const auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::size_t> MultiPoly::var_index(std::string_view name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

int MultiPoly::degree(std::string_view var) const {
  if (is_zero()) return -1;
  const auto idx = var_index(var);
  if (!idx) return 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[*idx]);
  return d;
}

int MultiPoly::total_degree() const {
  if (is_zero()) return -1;
  return std::accumulate(terms_.rbegin()->first.begin(), terms_.rbegin()->first.end(), 0);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::with_variables(std::vector<std::string> vars) const {
  if (vars == vars_) return *this;
  std::vector<int> where(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) where[i] = static_cast<int>(it - vars.begin());
  }
  MultiPoly out(std::move(vars));
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) throw Error(ErrorKind::VariableAbsent, fmt::format("variable '{}' in use", vars_[i]));
      ne[static_cast<std::size_t>(where[i])] = e[i];
    }
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::trimmed() const {
  std::vector<std::string> used;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) {
        used.push_back(vars_[i]);
        break;
      }
  return with_variables(std::move(used));
}

std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return {a, b};
  std::vector<std::string> vars = a.vars_;
  for (const auto& v : b.vars_)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  return {a.with_variables(vars), b.with_variables(vars)};
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::string_view var) const {
  const auto idx = var_index(var);
  if (!idx) return {*this};
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(degree(var), 0)) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    const int k = ne[*idx];
    ne[*idx] = 0;
    out[static_cast<std::size_t>(k)].add_term(ne, c);
  }
  return out;
}

MultiPoly MultiPoly::leading_coefficient_in(std::string_view var) const {
  if (is_zero()) return *this;
  return coefficients_in(var).back();
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
  const auto idx = var_index(var);
  MultiPoly out(vars_);
  if (!idx) return out;
  for (const auto& [e, c] : terms_) {
    if (e[*idx] == 0) continue;
    Exponents ne = e;
    ne[*idx] -= 1;
    out.add_term(ne, c * e[*idx]);
  }
  return out;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (is_zero()) throw Error(ErrorKind::InvariantViolation, "leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (is_zero()) throw Error(ErrorKind::InvariantViolation, "leading term of zero polynomial");
  return terms_.rbegin()->first;
}

MultiPoly MultiPoly::homogenized(const std::string& new_var) const {
  std::vector<std::string> vars = vars_;
  vars.push_back(new_var);
  MultiPoly out(std::move(vars));
  const int d = total_degree();
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne.push_back(d - std::accumulate(e.begin(), e.end(), 0));
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::top_form() const {
  MultiPoly out(vars_);
  const int d = total_degree();
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == d) out.terms_.emplace(e, c);
  return out;
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& point) const {
  std::vector<const Rational*> values(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto it = point.find(vars_[i]);
    if (it != point.end()) values[i] = &it->second;
  }
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!values[i]) throw Error(ErrorKind::VariableAbsent, fmt::format("no value for '{}'", vars_[i]));
      for (int k = 0; k < e[i]; ++k) term *= *values[i];
    }
    total += term;
  }
  return total;
}

std::complex<double> MultiPoly::evaluate(const std::map<std::string, std::complex<double>>& point) const {
  std::vector<std::complex<double>> values(vars_.size());
  std::vector<bool> bound(vars_.size(), false);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto it = point.find(vars_[i]);
    if (it != point.end()) {
      values[i] = it->second;
      bound[i] = true;
    }
  }
  std::complex<double> total = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!bound[i]) throw Error(ErrorKind::VariableAbsent, fmt::format("no value for '{}'", vars_[i]));
      for (int k = 0; k < e[i]; ++k) term *= values[i];
    }
    total += term;
  }
  return total;
}

MultiPoly MultiPoly::substitute(std::string_view var, const MultiPoly& value) const {
  const auto coeffs = coefficients_in(var);
  if (coeffs.size() == 1 && !var_index(var)) return *this;
  // Horner in var
  MultiPoly result = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) result = result * value + coeffs[k];
  const auto idx = result.var_index(var);
  if (idx && !value.depends_on(var)) {
    std::vector<std::string> vars = result.vars_;
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(*idx));
    return result.with_variables(std::move(vars));
  }
  return result;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (vars_ == rhs.vars_) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  auto [a, b] = aligned(*this, rhs);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  *this = std::move(a);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.is_zero() || b0.is_zero()) {
    auto [a, b] = aligned(a0, b0);
    return MultiPoly(a.variables());
  }
  const auto [a, b] = aligned(a0, b0);
  MultiPoly out(a.variables());
  Exponents e(a.variables().size());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c == 0) return MultiPoly(vars_);
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(1, vars_);
  MultiPoly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  return (a - b).is_zero();
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] != 1) mono += fmt::format("^{}", e[i]);
    }
    const bool negative = c < 0;
    const Rational mag = abs(c);
    std::string term;
    if (mono.empty()) term = mag.get_str();
    else if (mag == 1) term = mono;
    else term = mag.get_str() + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

// ---------------------------------------------------------------------------

MultiPoly divide_exact(const MultiPoly& p0, const MultiPoly& d0) {
  if (d0.is_zero()) throw Error(ErrorKind::InexactDivision, "division by zero polynomial");
  auto [p, d] = aligned(p0, d0);
  MultiPoly quotient(p.variables());
  const Exponents& ld = d.leading_exponents();
  const Rational& lc = d.leading_coefficient();
  MultiPoly r = p;
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    Exponents q(lr.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = lr[i] - ld[i];
      if (q[i] < 0)
        throw Error(ErrorKind::InexactDivision, fmt::format("({}) / ({})", p0.to_string(), d0.to_string()));
    }
    MultiPoly term(p.variables(), {{q, r.leading_coefficient() / lc}});
    quotient += term;
    r -= term * d;
  }
  return quotient;
}

namespace {

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, const std::vector<std::string>& vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(1, vars);
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(1, vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return MultiPoly(vars);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = MultiPoly(vars);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MultiPoly monomial_power(const std::vector<std::string>& vars, std::size_t idx, int k) {
  Exponents e(vars.size(), 0);
  e[idx] = k;
  return MultiPoly(vars, {{e, Rational(1)}});
}

}  // namespace

MultiPoly resultant(const MultiPoly& p0, const MultiPoly& q0, std::string_view var) {
  auto [p, q] = aligned(p0, q0);
  const int m = p.degree(var);
  const int n = q.degree(var);
  if (m <= 0 || n <= 0)
    throw Error(ErrorKind::VariableAbsent,
                fmt::format("resultant needs positive degree in '{}' for both inputs", var));
  const auto pc = p.coefficients_in(var);
  const auto qc = q.coefficients_in(var);
  const auto& vars = p.variables();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<MultiPoly>> sylvester(size, std::vector<MultiPoly>(size, MultiPoly(vars)));
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r)
    for (int k = 0; k <= m; ++k) sylvester[r][r + static_cast<std::size_t>(m - k)] = pc[static_cast<std::size_t>(k)];
  for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r)
    for (int k = 0; k <= n; ++k)
      sylvester[static_cast<std::size_t>(n) + r][r + static_cast<std::size_t>(n - k)] = qc[static_cast<std::size_t>(k)];
  MultiPoly det = bareiss_determinant(std::move(sylvester), vars);
  const auto idx = det.var_index(var);
  if (idx) {
    std::vector<std::string> rest = det.variables();
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*idx));
    return det.with_variables(std::move(rest));
  }
  return det;
}

MultiPoly normalize_unit(const MultiPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (p.leading_coefficient() < 0) factor = -factor;
  return p.scaled(factor);
}

bool equal_up_to_unit(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  auto [a, b] = aligned(p, q);
  return a.scaled(b.leading_coefficient()) == b.scaled(a.leading_coefficient());
}

namespace {

MultiPoly gcd_impl(const MultiPoly& p, const MultiPoly& q);

MultiPoly content_in(const MultiPoly& p, std::string_view var) {
  MultiPoly g(p.variables());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c) : gcd_impl(g, c);
    if (g.is_constant()) return MultiPoly::constant(1, p.variables());
  }
  return g;
}

MultiPoly primitive_part(const MultiPoly& p, std::string_view var) {
  if (p.is_zero()) return p;
  return normalize_unit(divide_exact(p, content_in(p, var)));
}

MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::string_view var, std::size_t var_idx) {
  const int db = b.degree(var);
  const MultiPoly lb = b.leading_coefficient_in(var);
  while (!a.is_zero() && a.degree(var) >= db) {
    const MultiPoly la = a.leading_coefficient_in(var);
    const MultiPoly shift = monomial_power(a.variables(), var_idx, a.degree(var) - db);
    a = a * lb - la * shift * b;
  }
  return a;
}

MultiPoly gcd_impl(const MultiPoly& p0, const MultiPoly& q0) {
  auto [p, q] = aligned(p0, q0);
  if (p.is_zero()) return normalize_unit(q);
  if (q.is_zero()) return normalize_unit(p);
  const auto& vars = p.variables();
  std::optional<std::size_t> main;
  for (std::size_t i = 0; i < vars.size() && !main; ++i)
    if (p.degree(vars[i]) > 0 || q.degree(vars[i]) > 0) main = i;
  if (!main) return MultiPoly::constant(1, vars);
  const std::string& v = vars[*main];
  if (p.degree(v) == 0) return gcd_impl(p, content_in(q, v));
  if (q.degree(v) == 0) return gcd_impl(content_in(p, v), q);

  const MultiPoly c = gcd_impl(content_in(p, v), content_in(q, v));
  MultiPoly a = primitive_part(p, v);
  MultiPoly b = primitive_part(q, v);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero()) {
    const MultiPoly r = pseudo_remainder(a, b, v, *main);
    a = b;
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      a = MultiPoly::constant(1, vars);
      break;
    }
    b = primitive_part(r, v);
  }
  return normalize_unit(c * primitive_part(a, v));
}

}  // namespace

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) { return gcd_impl(p, q); }

MultiPoly squarefree(const MultiPoly& p) {
  if (p.is_zero()) return p;
  if (p.is_constant()) return MultiPoly::constant(1, p.variables());
  MultiPoly g = p;
  for (const auto& v : p.variables())
    if (p.degree(v) > 0) g = gcd(g, p.derivative(v));
  return normalize_unit(divide_exact(p, g));
}

// ---------------------------------------------------------------------------

RationalFn::RationalFn(MultiPoly num) : RationalFn(std::move(num), MultiPoly::constant(1)) {}

RationalFn::RationalFn(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::DenominatorVanishesIdentically, "zero denominator");
  auto [n, d] = aligned(num, den);
  if (n.is_zero()) {
    num_ = MultiPoly(n.variables());
    den_ = MultiPoly::constant(1, n.variables());
    return;
  }
  const MultiPoly g = gcd(n, d);
  if (!g.is_constant()) {
    n = divide_exact(n, g);
    d = divide_exact(d, g);
  }
  const MultiPoly dn = normalize_unit(d);
  const Rational factor = dn.leading_coefficient() / d.leading_coefficient();
  num_ = n.scaled(factor);
  den_ = dn;
}

MultiPoly RationalFn::as_polynomial() const {
  if (!is_polynomial()) throw Error(ErrorKind::InexactDivision, fmt::format("'{}' is not a polynomial", to_string()));
  return num_.scaled(1 / den_.constant_term());
}

Rational RationalFn::evaluate(const std::map<std::string, Rational>& point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw Error(ErrorKind::InexactDivision, "denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

std::complex<double> RationalFn::evaluate(const std::map<std::string, std::complex<double>>& point) const {
  return num_.evaluate(point) / den_.evaluate(point);
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_); }

RationalFn RationalFn::inverse() const {
  if (num_.is_zero()) throw Error(ErrorKind::DenominatorVanishesIdentically, "inverse of zero");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return RationalFn(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

std::string RationalFn::to_string() const {
  if (is_polynomial()) return as_polynomial().to_string();
  auto wrap = [](const MultiPoly& p) {
    const std::string s = p.to_string();
    return p.term_count() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

bool operator==(const RationalFn& a, const RationalFn& b) {
  return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

RationalFn substitute(const MultiPoly& p, const Bindings& bindings) {
  const auto& vars = p.variables();
  std::vector<const RationalFn*> bound(vars.size(), nullptr);
  std::vector<std::string> free_vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto it = bindings.find(vars[i]);
    if (it != bindings.end()) {
      if (it->second.denominator().is_zero())
        throw Error(ErrorKind::DenominatorVanishesIdentically, fmt::format("binding for '{}'", vars[i]));
      bound[i] = &it->second;
    } else {
      free_vars.push_back(vars[i]);
    }
  }
  RationalFn total{MultiPoly(free_vars)};
  for (const auto& [e, c] : p.terms()) {
    Exponents fe;
    fe.reserve(free_vars.size());
    RationalFn term(MultiPoly::constant(c, free_vars));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (bound[i]) {
        if (e[i] != 0) term = term * bound[i]->pow(e[i]);
      } else {
        fe.push_back(e[i]);
      }
    }
    if (!free_vars.empty()) term = term * RationalFn(MultiPoly(free_vars, {{fe, Rational(1)}}));
    total = total + term;
  }
  return total;
}

RationalFn substitute(const RationalFn& f, const Bindings& bindings) {
  return substitute(f.numerator(), bindings) / substitute(f.denominator(), bindings);
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& var_order) : text_(text), vars_(var_order) {}

  RationalFn parse() {
    RationalFn value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return value;
  }

  std::vector<std::string> variables() const { return vars_; }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, fmt::format("{} at column {} in '{}'", why, pos_ + 1, text_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFn expr() {
    RationalFn value = term();
    while (true) {
      if (accept('+')) value = value + term();
      else if (accept('-')) value = value - term();
      else return value;
    }
  }

  RationalFn term() {
    RationalFn value = unary();
    while (true) {
      if (accept('*')) {
        value = value * unary();
      } else if (accept('/')) {
        const RationalFn d = unary();
        if (d.is_zero()) fail("division by zero");
        value = value / d;
      } else {
        return value;
      }
    }
  }

  RationalFn unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFn power() {
    RationalFn base = primary();
    if (accept('^')) {
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (negative && base.is_zero()) fail("negative power of zero");
      return base.pow(negative ? -n : n);
    }
    return base;
  }

  RationalFn primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFn value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) vars_.push_back(name);
      return RationalFn(MultiPoly::variable(name));
    }
    fail(fmt::format("unexpected '{}'", c));
  }

  RationalFn number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    mpz_class scale = 1;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
        scale *= 10;
      }
    }
    if (digits.empty()) fail("malformed number");
    Rational q(mpz_class(digits), scale);
    q.canonicalize();
    return RationalFn(MultiPoly::constant(q));
  }

  std::string_view text_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFn parse_rational(std::string_view text, const std::vector<std::string>& var_order) {
  ExprParser parser(text, var_order);
  const RationalFn f = parser.parse();
  const auto vars = parser.variables();
  return RationalFn(f.numerator().with_variables(vars), f.denominator().with_variables(vars));
}

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& var_order) {
  const RationalFn f = parse_rational(text, var_order);
  if (!f.is_polynomial()) throw Error(ErrorKind::ParseError, fmt::format("'{}' is not a polynomial", text));
  return f.as_polynomial();
}

}  // namespace charmut
