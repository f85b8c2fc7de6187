#include "charmut/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "charmut/error.hpp"
#include "charmut/trace.hpp"

namespace charmut {

namespace {

const std::string kLambda = "__lambda";

std::vector<cplx> roots_of(std::vector<cplx> c) {
  // c[k] is the coefficient of t^k.
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  const std::size_t n = c.empty() ? 0 : c.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {-c[0] / c[1]};
  if (n == 2) {
    const cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
    // Pick the sign that avoids cancellation, then use Vieta for the other root.
    const cplx q = -0.5 * (c[1] + (std::real(std::conj(c[1]) * disc) >= 0.0 ? disc : -disc));
    if (std::abs(q) == 0.0) return {0.0, 0.0};
    return {q / c[2], c[0] / q};
  }
  const cplx lead = c.back();
  for (auto& v : c) v /= lead;
  auto eval = [&](cplx t) {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
    return acc;
  };
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius = 1.0 + radius;
  std::vector<cplx> z(n);
  const cplx seed{0.4, 0.9};
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(seed, static_cast<double>(k)) * std::min(radius, 2.0);
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      if (std::abs(den) == 0.0) den = 1e-300;
      const cplx step = eval(z[k]) / den;
      z[k] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  return z;
}

std::vector<cplx> to_complex_coefficients(const MultiPoly& p, std::string_view var) {
  std::vector<cplx> out;
  for (const auto& c : p.coefficients_in(var)) {
    if (!c.trimmed().variables().empty() && !c.is_constant())
      throw Error(ErrorKind::InvariantViolation, fmt::format("polynomial is not univariate in '{}'", var));
    out.emplace_back(c.constant_term().get_d());
  }
  return out;
}

std::string single_variable(const MultiPoly& p) {
  const auto vars = p.trimmed().variables();
  if (vars.size() > 1) throw Error(ErrorKind::InvariantViolation, "polynomial is not univariate");
  return vars.empty() ? std::string() : vars.front();
}

MultiPoly var_poly(const std::string& name) { return MultiPoly::variable(name); }

MultiPoly rename(const MultiPoly& p, const std::string& from, const std::string& to) {
  if (from == to || !p.depends_on(from)) return p;
  return p.substitute(from, var_poly(to)).trimmed();
}

MultiPoly gcd_or(const std::optional<MultiPoly>& acc, const MultiPoly& p) { return acc ? gcd(*acc, p) : p; }

/// Square-free decomposition: pairs (P_i, i) with p = c * prod P_i^i.
std::vector<std::pair<MultiPoly, int>> yun(const MultiPoly& p, std::string_view var) {
  std::vector<std::pair<MultiPoly, int>> out;
  if (p.degree(var) <= 0) return out;
  MultiPoly c = gcd(p, p.derivative(var));
  MultiPoly w = divide_exact(p, c);
  int i = 1;
  while (w.degree(var) > 0) {
    const MultiPoly y = gcd(w, c);
    const MultiPoly z = divide_exact(w, y);
    if (z.degree(var) > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = divide_exact(c, y);
  }
  return out;
}

/// Exponent pairs of a polynomial in (w, z).
std::vector<std::pair<int, int>> support(const MultiPoly& g, const std::string& w, const std::string& z) {
  const auto gv = g.with_variables({w, z});
  std::vector<std::pair<int, int>> out;
  for (const auto& [e, c] : gv.terms()) out.emplace_back(e[0], e[1]);
  return out;
}

/// Smallest exponent r over the branches w ~ z^r of g(w, z) = 0 through the
/// origin, read off the lower edges of the Newton polygon.  A branch w = 0
/// counts as r = infinity.
double min_branch_exponent(const MultiPoly& g, const std::string& w, const std::string& z) {
  const auto pts = support(g, w, z);
  int imin = pts.front().first;
  for (const auto& [i, j] : pts) imin = std::min(imin, i);
  int ja = -1;
  for (const auto& [i, j] : pts)
    if (i == imin && (ja < 0 || j < ja)) ja = j;
  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> cur{imin, ja};
  while (cur.second > 0) {
    std::optional<std::pair<int, int>> next;
    double slope = 0.0;
    for (const auto& q : pts) {
      if (q.first <= cur.first || q.second >= cur.second) continue;
      const double s = static_cast<double>(q.second - cur.second) / (q.first - cur.first);
      if (!next || s < slope - 1e-12 || (std::abs(s - slope) <= 1e-12 && q.first > next->first)) {
        next = q;
        slope = s;
      }
    }
    if (!next) break;
    best = std::min(best, -slope);
    cur = *next;
  }
  return best;
}

RationalFn subst1(const RationalFn& f, const std::string& var, const RationalFn& value) {
  Bindings b;
  b.emplace(var, value);
  return substitute(f, b);
}

struct LinearSolve {
  std::string u, v;
  MultiPoly a, b;  // curve = a(v) u + b(v)
  RationalFn u_of_v;
};

LinearSolve linear_solve(const PlaneCurve& c) {
  const auto& [u, v] = c.vars();
  if (c.poly().degree(u) != 1)
    throw Error(ErrorKind::UnsupportedDegree,
                fmt::format("curve {} has degree {} in '{}', expected 1", c.poly().to_string(), c.poly().degree(u), u));
  const auto cs = c.poly().coefficients_in(u);
  LinearSolve s{u, v, cs[1].trimmed(), cs[0].trimmed(), RationalFn()};
  s.u_of_v = RationalFn(-s.b, s.a);
  return s;
}

RationalFn reduce_on(const LinearSolve& s, const RationalFn& f) { return subst1(f, s.u, s.u_of_v); }

/// Affine points of the curve on which one of `loci` vanishes.
std::vector<ExceptionalPoint> exceptional_points(const LinearSolve& s, const std::vector<MultiPoly>& loci) {
  MultiPoly product = MultiPoly::constant(1, {s.v});
  for (const auto& l : loci) {
    if (l.is_zero() || l.is_constant()) continue;
    const RationalFn restricted = reduce_on(s, RationalFn(l));
    if (restricted.is_zero())
      throw Error(ErrorKind::DenominatorVanishesIdentically, fmt::format("{} vanishes on the curve", l.to_string()));
    MultiPoly n = restricted.numerator();
    if (n.is_constant()) continue;
    // Roots of a(v) carry no affine point of the curve.
    for (MultiPoly g = gcd(n, s.a); g.degree(s.v) > 0; g = gcd(n, s.a)) n = divide_exact(n, g);
    product *= n;
  }
  std::vector<ExceptionalPoint> out;
  if (product.degree(s.v) <= 0) return out;
  const MultiPoly sq = squarefree(product);
  for (const cplx v0 : roots_of(to_complex_coefficients(sq.with_variables({s.v}), s.v))) {
    const cplx u0 = s.u_of_v.evaluate(std::map<std::string, cplx>{{s.v, v0}});
    out.push_back({u0, v0});
  }
  std::sort(out.begin(), out.end(), [](const ExceptionalPoint& p, const ExceptionalPoint& q) {
    if (std::abs(p.second.real() - q.second.real()) > 1e-9) return p.second.real() < q.second.real();
    return p.second.imag() < q.second.imag();
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

PlaneCurve::PlaneCurve(const MultiPoly& poly, std::array<std::string, 2> vars, std::string ambient)
    : vars_(std::move(vars)), ambient_(std::move(ambient)) {
  if (poly.is_zero()) throw Error(ErrorKind::InvariantViolation, "plane curve from the zero polynomial");
  if (poly.is_constant()) throw Error(ErrorKind::InvariantViolation, "plane curve from a nonzero constant is empty");
  const MultiPoly used = poly.trimmed();
  for (const auto& v : used.variables())
    if (v != vars_[0] && v != vars_[1])
      throw Error(ErrorKind::InvariantViolation, fmt::format("variable '{}' is not a curve coordinate", v));
  poly_ = squarefree(poly.with_variables({vars_[0], vars_[1]})).with_variables({vars_[0], vars_[1]});
}

std::vector<cplx> univariate_roots(const MultiPoly& p) {
  const std::string v = single_variable(p);
  if (v.empty()) return {};
  return roots_of(to_complex_coefficients(p.trimmed(), v));
}

std::pair<cplx, cplx> quotient_map(std::pair<cplx, cplx> point) { return {point.first * point.first, point.second}; }

PlaneCurve quotient_map(const PlaneCurve& c, const std::string& new_var) {
  const auto& [x, y] = c.vars();
  if (new_var == x || new_var == y)
    throw Error(ErrorKind::InvariantViolation, fmt::format("quotient variable '{}' clashes with the curve", new_var));
  bool even = true;
  for (const auto& [e, coeff] : c.poly().terms()) even = even && e[0] % 2 == 0;
  if (even) {
    MultiPoly::TermMap terms;
    for (const auto& [e, coeff] : c.poly().terms()) terms.emplace(Exponents{e[0] / 2, e[1]}, coeff);
    return PlaneCurve(MultiPoly({new_var, y}, std::move(terms)), {new_var, y}, c.ambient());
  }
  const MultiPoly f = c.poly().with_variables({x, y, new_var});
  const MultiPoly rel = var_poly(new_var) - var_poly(x).pow(2);
  return PlaneCurve(resultant(f, rel, x).trimmed(), {new_var, y}, c.ambient());
}

MultiPoly abelian_locus(const Presentation& p, std::string_view generator, const std::string& var) {
  if (!p.has_generator(generator))
    throw Error(ErrorKind::GeneratorNotInPresentation,
                fmt::format("'{}' is not a generator of {}", generator, p.name));
  const mpz_class d = abelianize(p).order_of(p.index_of(generator));
  if (d == 0) return MultiPoly({var});
  if (d > 64) throw Error(ErrorKind::DegreeTooLarge, fmt::format("generator order {} exceeds 64", d.get_str()));
  const MultiPoly l = var_poly(kLambda);
  const MultiPoly one = MultiPoly::constant(1);
  const MultiPoly cyc = l.pow(static_cast<unsigned>(d.get_ui())) - one;
  const MultiPoly quad = l.pow(2) - var_poly(var) * l + one;
  return normalize_unit(squarefree(resultant(cyc, quad, kLambda).trimmed())).with_variables({var});
}

CurveAnalysis curve_analyze(const PlaneCurve& c) {
  const MultiPoly& f = c.poly();
  const auto& [x, y] = c.vars();
  CurveAnalysis out;
  out.degree = f.total_degree();
  if (out.degree > kMaxCurveDegree)
    throw Error(ErrorKind::DegreeTooLarge, fmt::format("degree {} exceeds {}", out.degree, kMaxCurveDegree));

  // Affine singular points: common zeros of f, f_x, f_y.
  const MultiPoly fx = f.derivative(x);
  const MultiPoly fy = f.derivative(y);
  auto nonzero_const = [](const MultiPoly& p) { return !p.is_zero() && p.is_constant(); };
  if (nonzero_const(fx) || nonzero_const(fy)) {
    out.smooth_affine = true;
  } else {
    const std::string e = f.degree(y) > 0 ? y : x;
    const std::string o = e == y ? x : y;
    std::optional<MultiPoly> g;
    for (const MultiPoly* part : {&fx, &fy}) {
      if (part->is_zero()) continue;
      const MultiPoly r = part->degree(e) > 0 ? resultant(f, *part, e) : *part;
      if (!r.is_zero()) g = gcd_or(g, r);
    }
    if (g && g->is_constant()) {
      out.smooth_affine = true;
    } else if (!g) {
      out.smooth_affine = false;
      out.smoothness_certified = false;
    } else {
      out.smoothness_certified = false;
      out.smooth_affine = true;
      const auto fe = f.coefficients_in(e);
      for (const cplx o0 : univariate_roots(g->trimmed())) {
        const std::map<std::string, cplx> at_o{{o, o0}};
        std::vector<cplx> coeffs;
        double scale = 0.0;
        for (const auto& k : fe) {
          coeffs.push_back(k.evaluate(at_o));
          scale = std::max(scale, std::abs(coeffs.back()));
        }
        for (const cplx e0 : roots_of(coeffs)) {
          const std::map<std::string, cplx> pt{{o, o0}, {e, e0}};
          const double tol = 1e-6 * std::max(1.0, scale) * std::max(1.0, std::pow(std::abs(e0), out.degree));
          if (std::abs(fx.evaluate(pt)) < tol && std::abs(fy.evaluate(pt)) < tol) out.smooth_affine = false;
        }
      }
    }
  }

  // Points at infinity, chart by chart.  By Euler's relation F = F_y = F_z = 0
  // at [1 : y : 0] forces F_x = 0 as well, and symmetrically at [0 : 1 : 0].
  const std::string z = "__z";
  const MultiPoly F = f.homogenized(z);
  const MultiPoly Fx = F.derivative(x), Fy = F.derivative(y), Fz = F.derivative(z);
  const MultiPoly one = MultiPoly::constant(1), zero = MultiPoly::constant(0);
  auto at_x1 = [&](const MultiPoly& p) { return p.substitute(x, one).substitute(z, zero).trimmed(); };
  bool smooth_inf = true;
  {
    MultiPoly g = at_x1(F);
    for (const MultiPoly* part : {&Fy, &Fz}) {
      const MultiPoly q = at_x1(*part);
      if (!q.is_zero()) g = gcd(g, q);
    }
    if (!g.is_zero() && !g.is_constant()) smooth_inf = false;
  }
  const std::map<std::string, Rational> pt01{{x, 0}, {y, 1}, {z, 0}};
  if (F.evaluate(pt01) == 0 && Fx.evaluate(pt01) == 0 && Fz.evaluate(pt01) == 0) smooth_inf = false;
  out.smooth_at_infinity = smooth_inf;

  // Rational parametrisation when f is linear in one variable.
  for (const auto& [lin, other] : {std::pair{y, x}, std::pair{x, y}}) {
    if (f.degree(lin) != 1) continue;
    const auto cs = f.coefficients_in(lin);
    if (!gcd(cs[1], cs[0]).is_constant()) continue;
    const MultiPoly a = rename(cs[1].trimmed(), other, "s");
    const MultiPoly b = rename(cs[0].trimmed(), other, "s");
    const RationalFn s{var_poly("s")};
    const RationalFn solved{-b, a};
    out.parametrization = lin == y ? std::pair{s, solved} : std::pair{solved, s};
    break;
  }
  if (out.smooth_affine && out.smooth_at_infinity && out.smoothness_certified)
    out.genus = (out.degree - 1) * (out.degree - 2) / 2;
  else if (out.parametrization)
    out.genus = 0;
  return out;
}

BirationalReport birational_verify(const RationalPlaneMap& f, const RationalPlaneMap& g, const PlaneCurve& source,
                                   const PlaneCurve& target, const MultiPoly& extra_locus) {
  const LinearSolve src = linear_solve(source);
  const LinearSolve tgt = linear_solve(target);
  auto bind = [](const LinearSolve& s, const RationalPlaneMap& m) {
    Bindings b;
    b.emplace(s.u, m.components[0]);
    b.emplace(s.v, m.components[1]);
    return b;
  };
  const Bindings f_into_target = bind(tgt, f);
  const Bindings g_into_source = bind(src, g);

  BirationalReport rep;
  rep.pushforward = reduce_on(src, substitute(target.poly(), f_into_target));
  if (!rep.pushforward.is_zero())
    throw Error(ErrorKind::PushforwardNonzero, fmt::format("target pulled back along the map reduces to {}",
                                                           rep.pushforward.to_string()));
  rep.pushforward_zero = true;
  rep.inverse_pushforward = reduce_on(tgt, substitute(source.poly(), g_into_source));
  if (!rep.inverse_pushforward.is_zero())
    throw Error(ErrorKind::PushforwardNonzero, fmt::format("source pulled back along the inverse reduces to {}",
                                                           rep.inverse_pushforward.to_string()));
  rep.inverse_pushforward_zero = true;

  auto roundtrip = [](const LinearSolve& s, const RationalPlaneMap& outer, const Bindings& inner) {
    for (int i = 0; i < 2; ++i) {
      const RationalFn composed = reduce_on(s, substitute(outer.components[i], inner));
      const RationalFn expected = reduce_on(s, RationalFn(var_poly(i == 0 ? s.u : s.v)));
      if (!(composed - expected).is_zero()) return false;
    }
    return true;
  };
  rep.roundtrip_identity = roundtrip(src, g, f_into_target);
  rep.inverse_roundtrip_identity = roundtrip(tgt, f, g_into_source);

  auto loci = [&](const RationalPlaneMap& m, const LinearSolve& s) {
    std::vector<MultiPoly> out;
    for (const auto& comp : m.components) out.push_back(comp.denominator());
    if (!extra_locus.is_zero()) out.push_back(rename(extra_locus.trimmed(), src.v, s.v));
    return out;
  };
  rep.source_exceptional = exceptional_points(src, loci(f, src));
  rep.target_exceptional = exceptional_points(tgt, loci(g, tgt));
  rep.source_exceptional_count = rep.source_exceptional.size();
  rep.target_exceptional_count = rep.target_exceptional.size();
  return rep;
}

int IdealPointReport::total_multiplicity() const {
  int total = 0;
  for (const auto& p : points) total += p.multiplicity;
  return total;
}

IdealPointReport ideal_scan(const PlaneCurve& c) {
  const auto& [x, y] = c.vars();
  const std::string z = "__z";
  const MultiPoly F = c.poly().homogenized(z);
  const MultiPoly top = c.poly().top_form();
  const MultiPoly one = MultiPoly::constant(1);
  IdealPointReport out;

  int mx = std::numeric_limits<int>::max();
  for (const auto& [e, coeff] : top.terms()) mx = std::min(mx, e[0]);
  if (mx > 0) {
    // [0 : 1 : 0]: chart y = 1, local coordinates (x/y, z/y); x = (x/y) / (z/y).
    InfinityPoint p{0.0, 1.0, mx, true, false, true};
    p.first_unbounded = min_branch_exponent(F.substitute(y, one), x, z) < 1.0;
    out.points.push_back(p);
  }
  // [1 : t : 0] with top(1, t) = 0; in the chart x = 1, y = (y/x) / (z/x).
  MultiPoly u = top.substitute(x, one).with_variables({y});
  int m0 = 0;
  while (!u.is_zero() && u.constant_term() == 0) {
    u = divide_exact(u, var_poly(y).with_variables({y}));
    ++m0;
  }
  if (m0 > 0) {
    InfinityPoint p{1.0, 0.0, m0, true, true, false};
    p.second_unbounded = min_branch_exponent(F.substitute(x, one), y, z) < 1.0;
    out.points.push_back(p);
  }
  for (const auto& [factor, mult] : yun(u, y)) {
    const bool exact = factor.degree(y) == 1;
    for (const cplx t : univariate_roots(factor)) out.points.push_back({1.0, t, mult, exact, true, true});
  }
  return out;
}

PathScan path_scan(const std::function<std::pair<cplx, cplx>(cplx)>& path, const std::vector<cplx>& params,
                   double threshold) {
  PathScan out;
  for (const cplx t : params) {
    const auto [a, b] = path(t);
    out.max_first = std::max(out.max_first, std::abs(a));
    out.max_second = std::max(out.max_second, std::abs(b));
  }
  out.first_unbounded = !(out.max_first <= threshold);
  out.second_unbounded = !(out.max_second <= threshold);
  return out;
}

CConditionReport c_condition_check(const std::function<Representation(cplx)>& family, const HnnSplitting& split,
                                   const std::vector<cplx>& params) {
  if (params.empty()) throw Error(ErrorKind::InvariantViolation, "no parameters to sample");
  constexpr double kBlowup = 1e6;
  const auto base = split.base_generators();
  const auto base_words = character_testset(base);
  const auto full_words = character_testset(split.group.generators);
  const SurfaceEmbedding emb = split.embedding();
  std::vector<Word> surface_words;
  for (const auto& g : emb.surface.generators) surface_words.push_back(emb.embed(Word::generator(g)));

  CConditionReport out;
  out.abelian_image = true;
  double base_max = 0.0, edge_err = 0.0, surface_err = 0.0, full_max = 0.0, variation = 0.0;
  bool all_reducible = true;
  std::optional<CharacterSample> first;
  for (const cplx t : params) {
    const Representation rep = family(t);
    for (const auto& v : character_of(rep, base_words).values) base_max = std::max(base_max, std::abs(v));

    std::vector<std::pair<Word, Word>> pairs = split.edges;
    for (std::size_t i = 0; i < split.edges.size(); ++i)
      for (std::size_t j = i + 1; j < split.edges.size(); ++j)
        pairs.emplace_back(split.edges[i].first * split.edges[j].first, split.edges[i].second * split.edges[j].second);
    for (const auto& [a1, a2] : pairs) {
      const cplx ta = evaluate(rep, a1).trace(), tb = evaluate(rep, a2).trace();
      edge_err = std::max(edge_err, std::abs(ta - tb) / std::max(1.0, std::abs(ta)));
    }

    std::vector<Mat2C> surf;
    for (const auto& w : surface_words) surf.push_back(evaluate(rep, w));
    for (std::size_t i = 0; i < surf.size(); ++i)
      for (std::size_t j = i + 1; j < surf.size(); ++j) {
        const Mat2C comm = surf[i] * surf[j] * surf[i].adjugate() * surf[j].adjugate();
        surface_err = std::max(surface_err, std::abs(comm.trace() - 2.0));
      }
    try {
      if (is_irreducible(surf)) all_reducible = false;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AllImagesCentral) throw;
    }

    const CharacterSample full = character_of(rep, full_words);
    for (const auto& v : full.values) full_max = std::max(full_max, std::abs(v));
    if (!first) first = full;
    else variation = std::max(variation, character_distance(*first, full));

    std::vector<Mat2C> gens;
    for (const auto& g : split.group.generators) gens.push_back(rep.image(g));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        const Mat2C d = gens[i] * gens[j] - gens[j] * gens[i];
        const double scale = std::max(1.0, gens[i].max_norm() * gens[j].max_norm());
        if (d.max_norm() > 1e-10 * scale) out.abelian_image = false;
      }
  }
  out.c1 = {base_max <= kBlowup, base_max};
  out.c2 = {edge_err <= 1e-6, edge_err};
  out.c3 = {all_reducible, surface_err};
  out.c4.nonconstant = variation > 1e-6;
  out.c4.max_trace = full_max;
  out.c4.blowup_detected = out.c4.nonconstant && full_max > kBlowup;
  return out;
}

}  // namespace charmut
