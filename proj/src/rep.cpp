#include "charmut/rep.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "charmut/error.hpp"
#include "charmut/linalg.hpp"
#include "charmut/trace.hpp"

namespace charmut {

std::string_view to_string(RepMode m) { return m == RepMode::SL2 ? "SL2" : "PSL2"; }

const Mat2C& Representation::image(std::string_view gen) const {
  auto it = images.find(gen);
  if (it == images.end()) throw Error(ErrorKind::UnknownGenerator, fmt::format("no image for generator '{}'", gen));
  return it->second;
}

Mat2C evaluate(const std::map<std::string, Mat2C, std::less<>>& images, const Word& w) {
  Mat2C out;
  for (const auto& s : w.syllables()) {
    auto it = images.find(s.gen);
    if (it == images.end()) throw Error(ErrorKind::UnknownGenerator, fmt::format("no image for generator '{}'", s.gen));
    const Mat2C m = s.exp > 0 ? it->second : it->second.adjugate();
    for (int k = 0; k < std::abs(s.exp); ++k) out *= m;
  }
  return out;
}

Mat2C evaluate(const Representation& rep, const Word& w) { return evaluate(rep.images, w); }

double relator_residual(const Representation& rep) {
  double worst = 0.0;
  for (const auto& r : rep.presentation.relators) {
    const Mat2C m = evaluate(rep, r);
    const double d = rep.mode == RepMode::SL2 ? distance(m, Mat2C::identity()) : distance_to_pm_identity(m);
    worst = std::max(worst, d);
  }
  return worst;
}

void require_relators(const Representation& rep, double tol) {
  const double r = relator_residual(rep);
  if (r > tol) {
    throw Error(ErrorKind::RelatorResidualTooLarge,
                fmt::format("relator residual {:.3g} exceeds {:.3g} for group {}", r, tol, rep.presentation.name));
  }
}

CharacterSample character_of(const Representation& rep, const std::vector<Word>& words) {
  CharacterSample s;
  s.words = words;
  s.squared = rep.mode == RepMode::PSL2;
  for (const auto& w : words) {
    const cplx t = evaluate(rep, w).trace();
    s.values.push_back(s.squared ? t * t : t);
  }
  return s;
}

CharacterSample character_of(const std::vector<Mat2C>& images, const std::vector<Word>& words, bool squared) {
  std::map<std::string, Mat2C, std::less<>> named;
  for (std::size_t i = 0; i < images.size(); ++i) named[fmt::format("g{}", i)] = images[i];
  CharacterSample s;
  s.words = words;
  s.squared = squared;
  for (const auto& w : words) {
    const cplx t = evaluate(named, w).trace();
    s.values.push_back(squared ? t * t : t);
  }
  return s;
}

double character_distance(const CharacterSample& a, const CharacterSample& b) {
  if (a.values.size() != b.values.size()) {
    throw Error(ErrorKind::InvariantViolation, "character samples over different word lists");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

namespace {

std::vector<std::array<cplx, 2>> eigenvectors(const Mat2C& m) {
  const cplx tr = m.trace();
  const cplx disc = std::sqrt(tr * tr - 4.0 * m.det());
  std::vector<cplx> lambdas{(tr + disc) / 2.0};
  if (std::abs(disc) > 1e-12 * std::max(1.0, std::abs(tr))) lambdas.push_back((tr - disc) / 2.0);
  std::vector<std::array<cplx, 2>> out;
  for (const cplx l : lambdas) {
    const std::array<cplx, 2> v1{m.b, l - m.a};
    const std::array<cplx, 2> v2{l - m.d, m.c};
    const auto& v = std::abs(v1[0]) + std::abs(v1[1]) >= std::abs(v2[0]) + std::abs(v2[1]) ? v1 : v2;
    const double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
    if (n == 0.0) continue;
    out.push_back({v[0] / n, v[1] / n});
  }
  return out;
}

}  // namespace

bool is_irreducible(const std::vector<Mat2C>& images, double tol) {
  std::vector<Mat2C> live;
  for (const auto& m : images) {
    if (distance_to_pm_identity(m) > tol * std::max(1.0, m.max_norm())) live.push_back(m);
  }
  if (live.empty()) throw Error(ErrorKind::AllImagesCentral, "every image is +-E");
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      const double scale = std::max(1.0, live[i].max_norm() * live[j].max_norm());
      if (std::abs(commutator(live[i], live[j]).trace() - 2.0) > tol * scale * scale) return true;
    }
  }
  for (const auto& v : eigenvectors(live.front())) {
    bool shared = true;
    for (const auto& n : live) {
      const cplx w0 = n.a * v[0] + n.b * v[1];
      const cplx w1 = n.c * v[0] + n.d * v[1];
      if (std::abs(v[0] * w1 - v[1] * w0) > tol * std::max(1.0, n.max_norm())) {
        shared = false;
        break;
      }
    }
    if (shared) return false;
  }
  return true;
}

bool is_irreducible(const Representation& rep, const std::vector<Word>& words, double tol) {
  std::vector<Mat2C> m;
  for (const auto& w : words) m.push_back(evaluate(rep, w));
  return is_irreducible(m, tol);
}

Mat2C fix_sign(const Mat2C& x) {
  const auto e = x.entries();
  double best = 0.0;
  for (const auto& z : e) best = std::max(best, std::abs(z));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(e[i]) >= best * (1.0 - 1e-9)) {
      idx = i;
      break;
    }
  }
  const double arg = std::arg(e[idx]);
  const bool keep = arg > -std::numbers::pi / 2 && arg <= std::numbers::pi / 2;
  return keep ? x : -x;
}

Mat2C conjugator_solve(const std::vector<Mat2C>& m1, const std::vector<Mat2C>& m2, const Tolerances& tol) {
  if (m1.size() != m2.size() || m1.empty()) {
    throw Error(ErrorKind::InvariantViolation, "conjugator_solve needs equally many nonempty image lists");
  }
  std::vector<Row4> rows;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    for (const auto& r : intertwiner_rows(m1[i], m2[i])) rows.push_back(r);
  }
  const auto ns = null_space(rows, tol.rank);
  if (ns.empty()) throw Error(ErrorKind::NoConjugator, "the two restrictions are not conjugate");
  if (ns.size() >= 2) {
    throw Error(ErrorKind::NonUniqueConjugator,
                fmt::format("intertwiner space has dimension {} (reducible restriction)", ns.size()));
  }
  const Mat2C x = to_matrix(ns.front());
  if (std::abs(x.det()) < tol.rank) throw Error(ErrorKind::NoConjugator, "the only intertwiner is singular");
  return fix_sign(x.normalized());
}

Mat2C conjugator_solve(const Representation& rep1, const Representation& rep2, const std::vector<Word>& words,
                       const Tolerances& tol) {
  std::vector<Mat2C> a, b;
  for (const auto& w : words) {
    a.push_back(evaluate(rep1, w));
    b.push_back(evaluate(rep2, w));
  }
  return conjugator_solve(a, b, tol);
}

std::string_view to_string(CentraliserClass c) {
  switch (c) {
    case CentraliserClass::Trivial: return "trivial";
    case CentraliserClass::Order2: return "order-2";
    case CentraliserClass::KleinianFour: return "kleinian-four";
    case CentraliserClass::PositiveDimensional: return "positive-dimensional";
  }
  return "?";
}

CentraliserClass centraliser_classify(const std::vector<Mat2C>& images, double rank_tol) {
  const std::size_t k = images.size();
  if (k == 0 || k > 16) throw Error(ErrorKind::InvariantViolation, "centraliser_classify needs 1 to 16 images");
  int nontrivial = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Row4> rows;
    for (std::size_t i = 0; i < k; ++i) {
      const Mat2C target = (mask >> i) & 1U ? -images[i] : images[i];
      for (const auto& r : intertwiner_rows(images[i], target)) rows.push_back(r);
    }
    const auto ns = null_space(rows, rank_tol);
    if (mask == 0) {
      if (ns.size() >= 2) return CentraliserClass::PositiveDimensional;
      continue;
    }
    for (const auto& v : ns) {
      if (std::abs(to_matrix(v).det()) > rank_tol) {
        ++nontrivial;
        break;
      }
    }
  }
  if (nontrivial == 0) return CentraliserClass::Trivial;
  if (nontrivial == 1) return CentraliserClass::Order2;
  return CentraliserClass::KleinianFour;
}

CentraliserClass centraliser_classify(const Representation& rep, const std::vector<Word>& words, double rank_tol) {
  std::vector<Mat2C> m;
  for (const auto& w : words) m.push_back(evaluate(rep, w));
  return centraliser_classify(m, rank_tol);
}

bool axes_rule_nontrivial(const Mat2C& a, const Mat2C& b, double tol) {
  int zeros = 0;
  for (const cplx t : {a.trace(), b.trace(), (a * b).trace()}) {
    if (std::abs(t * t) <= tol) ++zeros;
  }
  return zeros >= 2;
}

Representation sign_twist(const Representation& rep, const SignCharacter& eps) {
  if (!sign_character_well_defined(rep.presentation, eps)) {
    throw Error(ErrorKind::IllDefinedSign, fmt::format("{} violates relator parity of {}", eps.to_string(), rep.presentation.name));
  }
  Representation out = rep;
  for (auto& [g, m] : out.images) {
    if (eps.value(g) < 0) m = -m;
  }
  return out;
}

Representation precompose(const Representation& rep, const Endomorphism& tau) {
  Representation out = rep;
  for (const auto& g : tau.domain()) out.images[g] = evaluate(rep, tau.image(g));
  return out;
}

std::vector<std::vector<bool>> lift_search_order(std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (std::size_t k = 0; k <= n; ++k) {
    // Lexicographic k-subsets of {0..n-1}.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<bool> flips(n, false);
      for (auto i : idx) flips[i] = true;
      out.push_back(std::move(flips));
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

Representation find_tau_invariant_lift(const Representation& rep, const Endomorphism& tau, const Tolerances& tol) {
  const auto& gens = rep.presentation.generators;
  const auto testset = character_testset(gens);
  for (const auto& flips : lift_search_order(gens.size())) {
    Representation sigma = rep;
    sigma.mode = RepMode::SL2;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (flips[i]) sigma.images[gens[i]] = -sigma.images[gens[i]];
    }
    const Representation twisted = precompose(sigma, tau);
    if (character_distance(character_of(sigma, testset), character_of(twisted, testset)) <= tol.character) return sigma;
  }
  throw Error(ErrorKind::NotFound, "no sign lift has a tau-invariant character");
}

const Presentation& g2_presentation() {
  static const Presentation p = [] {
    const std::vector<std::string> g{"a", "b", "c", "d"};
    Presentation out{"G2", g, {parse_word("a b a^-1 b^-1 c d c^-1 d^-1", g)}};
    out.validate();
    return out;
  }();
  return p;
}

const Endomorphism& g2_tau() {
  static const Endomorphism e = [] {
    const auto& g = g2_presentation().generators;
    return Endomorphism(g, g,
                        {{"a", parse_word("a^-1", g)},
                         {"b", parse_word("a b^-1 a^-1", g)},
                         {"c", parse_word("b^-1 c d c^-1 d^-1 c^-1 b", g)},
                         {"d", parse_word("b^-1 c d^-1 c^-1 b", g)}});
  }();
  return e;
}

const std::vector<Word>& g2_condition_words() {
  static const std::vector<Word> w = [] {
    const auto& g = g2_presentation().generators;
    std::vector<Word> out;
    for (const char* s : {"a d^-1", "b c^-1", "a b d^-1", "b^-1 c d", "a c d"}) out.push_back(parse_word(s, g));
    return out;
  }();
  return w;
}

G2Report g2_nonliftable_test(const Representation& rep, const Tolerances& tol) {
  const Mat2C p = evaluate(rep, g2_presentation().relators.front());
  const double plus = distance(p, Mat2C::identity());
  const double minus = distance(p, -Mat2C::identity());
  G2Report r;
  r.relator_residual = std::min(plus, minus);
  if (r.relator_residual > 1e-7) {
    throw Error(ErrorKind::NotASurfaceGroupRep, fmt::format("[A,B][C,D] is {:.3g} away from +-E", r.relator_residual));
  }
  r.liftable = plus <= minus;

  Representation bar = rep;
  bar.mode = RepMode::PSL2;
  const auto testset = character_testset(g2_presentation().generators);
  const auto lhs = character_of(bar, testset);
  const auto rhs = character_of(precompose(bar, g2_tau()), testset);
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    const double scale = std::max(1.0, std::abs(lhs.values[i]));
    r.tau_residual = std::max(r.tau_residual, std::abs(lhs.values[i] - rhs.values[i]) / scale);
  }
  r.tau_invariant = r.tau_residual <= tol.character;

  r.five_conditions = true;
  for (std::size_t i = 0; i < 5; ++i) {
    const cplx t = evaluate(rep, g2_condition_words()[i]).trace();
    r.five[i] = t * t;
    if (std::abs(r.five[i]) > tol.character) r.five_conditions = false;
  }
  return r;
}

Representation sample_g2(Rng& rng, bool nonliftable, const Tolerances& tol) {
  const double sign = nonliftable ? -1.0 : 1.0;
  while (true) {
    const Mat2C a = random_sl2(rng), b = random_sl2(rng);
    const Mat2C k = commutator(a, b);
    if (distance_to_pm_identity(k) < 1e-3) continue;
    const Mat2C t = k.adjugate() * sign;
    // C D C^-1 D^-1 = T forces tr(C^-1 T) = tr C, a linear condition on C.
    auto g = [&](const Mat2C& c) { return (c.adjugate() * t).trace() - c.trace(); };
    const Mat2C c0 = random_sl2(rng), dir = random_sl2(rng);
    const cplx gd = g(dir);
    if (std::abs(gd) < 1e-3) continue;
    const Mat2C c_raw = c0 + dir * (-g(c0) / gd);
    if (std::abs(c_raw.det()) < 0.05 * c_raw.max_norm() * c_raw.max_norm()) continue;
    const Mat2C c = c_raw.normalized();
    // D C - (T^-1 C) D = 0.
    std::vector<Row4> rows;
    for (const auto& r : intertwiner_rows(c, k * sign * c)) rows.push_back(r);
    const auto ns = null_space(rows, tol.rank);
    if (ns.size() != 2) continue;
    const Mat2C d_raw = to_matrix(ns[0]) + to_matrix(ns[1]) * random_box_entry(rng);
    if (std::abs(d_raw.det()) < 0.05 * d_raw.max_norm() * d_raw.max_norm()) continue;
    const Mat2C d = d_raw.normalized();
    Representation rep{g2_presentation(), {{"a", a}, {"b", b}, {"c", c}, {"d", d}}, RepMode::PSL2};
    const Mat2C p = evaluate(rep, g2_presentation().relators.front());
    if (distance(p, Mat2C::identity() * sign) > tol.relator) continue;
    return rep;
  }
}

}  // namespace charmut
