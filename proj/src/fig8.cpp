#include "charmut/fig8.hpp"

#include <numbers>

#include "charmut/error.hpp"

namespace charmut::fig8 {

namespace {

const std::vector<std::string> kTA{"t", "a"};
const std::vector<std::string> kTAB{"t", "a", "b"};
const cplx I{0.0, 1.0};

Presentation make(const char* name, const std::vector<std::string>& gens, std::vector<const char*> rels) {
  Presentation p{name, gens, {}};
  for (const char* r : rels) p.relators.push_back(parse_word(r, gens));
  p.validate();
  return p;
}

}  // namespace

const Presentation& knot_group() {
  static const Presentation p = make("Gamma", kTA, {"t^-1 a^-1 t^-1 a t a^-2 t a"});
  return p;
}

const Presentation& sister_group() {
  static const Presentation p = make("Gamma_tau", kTA, {"t^-1 a t a^2 t a t^-1 a"});
  return p;
}

const Presentation& fibred_group() {
  static const Presentation p = make("Gamma_fibred", kTAB, {"t^-1 a t a^-1 b^-1 a^-1", "t^-1 b t a^-1 b^-1"});
  return p;
}

const HnnSplitting& fibre_split() {
  static const HnnSplitting s = [] {
    HnnSplitting h;
    h.group = fibred_group();
    h.stable = "t";
    h.surface = SurfaceId::T1;
    h.surface_words = {{"a", parse_word("a", kTAB)}, {"b", parse_word("b", kTAB)}};
    h.edges = {{parse_word("a", kTAB), parse_word("a b a", kTAB)}, {parse_word("b", kTAB), parse_word("b a", kTAB)}};
    h.validate();
    return h;
  }();
  return s;
}

const Word& fibre_b_word() {
  static const Word w = parse_word("a^-1 t^-1 a t a^-1", kTA);
  return w;
}

const Word& sister_b_word() {
  static const Word w = parse_word("a^-2 t^-1 a^-1 t", kTA);
  return w;
}

Representation to_fibred(const Representation& rep) {
  Representation out{fibred_group(), {}, rep.mode};
  out.images["t"] = rep.image("t");
  out.images["a"] = rep.image("a");
  out.images["b"] = evaluate(rep, fibre_b_word());
  return out;
}

Representation mutant_to_sister(const Representation& mutant) {
  Representation out{sister_group(), {}, mutant.mode};
  out.images["t"] = mutant.image("t");
  out.images["a"] = mutant.image("a").adjugate();
  return out;
}

Representation sister_to_mutant(const Representation& sister) {
  // The sister generators are the images of tau(a) = a^-1 and
  // tau(b) = a b^-1 a^-1, so b = a^-1 tau(b)^-1 a.
  Representation out{fibre_split().mutant(), {}, sister.mode};
  const Mat2C a = sister.image("a").adjugate();
  out.images["t"] = sister.image("t");
  out.images["a"] = a;
  out.images["b"] = a.adjugate() * evaluate(sister, sister_b_word()).adjugate() * a;
  return out;
}

std::vector<cplx> primitive_fifth_roots() {
  std::vector<cplx> out;
  for (int k = 1; k <= 4; ++k) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 5.0));
  return out;
}

Representation dihedral_rep(cplx u) {
  Representation r{knot_group(), {}, RepMode::SL2};
  r.images["t"] = Mat2C{I, 1.0, 0.0, -I};
  r.images["a"] = Mat2C{u, 0.0, I * (1.0 / u - u), 1.0 / u};
  return r;
}

Mat2C h_matrix(cplx z) { return Mat2C{I * z, z, z - 1.0 / z, -I * z}; }

Representation rho_z(cplx u, cplx z) {
  const Representation base = dihedral_rep(u);
  Representation r{sister_group(), {}, RepMode::SL2};
  r.images["t"] = h_matrix(z) * base.image("t");
  r.images["a"] = base.image("a");
  return r;
}

std::pair<cplx, cplx> xy(const Representation& rep) { return {rep.image("t").trace(), rep.image("a").trace()}; }

std::optional<Representation> sample_irreducible(const Presentation& group, Rng& rng, int restarts) {
  const Word& rel = group.relators.front();
  const cplx y = random_box_entry(rng) * 2.0;
  auto build = [&](cplx l, cplx al) {
    Representation r{group, {}, RepMode::SL2};
    const cplx de = y - al;
    r.images["t"] = Mat2C{l, 0.0, 0.0, 1.0 / l};
    r.images["a"] = Mat2C{al, 1.0, al * de - 1.0, de};
    return r;
  };
  auto residual = [&](cplx l, cplx al) {
    const Mat2C m = evaluate(build(l, al), rel) - Mat2C::identity();
    return m.entries();
  };
  for (int attempt = 0; attempt < restarts; ++attempt) {
    cplx l = random_box_entry(rng) * 1.5;
    if (std::abs(l) < 0.2) l += 0.5;
    cplx al = random_box_entry(rng) * 1.5;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const auto f = residual(l, al);
      double norm = 0.0;
      for (const auto& z : f) norm = std::max(norm, std::abs(z));
      if (!std::isfinite(norm) || norm > 1e8) break;
      if (norm < 1e-12) {
        converged = true;
        break;
      }
      // Holomorphic in (l, al), so a complex forward difference gives J.
      const double h = 1e-7;
      const auto fl = residual(l + h, al);
      const auto fa = residual(l, al + h);
      cplx jtj00{}, jtj01{}, jtj11{}, jtf0{}, jtf1{};
      for (std::size_t k = 0; k < 4; ++k) {
        const cplx j0 = (fl[k] - f[k]) / h;
        const cplx j1 = (fa[k] - f[k]) / h;
        jtj00 += std::conj(j0) * j0;
        jtj01 += std::conj(j0) * j1;
        jtj11 += std::conj(j1) * j1;
        jtf0 += std::conj(j0) * f[k];
        jtf1 += std::conj(j1) * f[k];
      }
      const cplx det = jtj00 * jtj11 - jtj01 * std::conj(jtj01);
      if (std::abs(det) < 1e-30) break;
      l -= (jtj11 * jtf0 - jtj01 * jtf1) / det;
      al -= (jtj00 * jtf1 - std::conj(jtj01) * jtf0) / det;
      if (std::abs(l) < 1e-8) break;
    }
    if (!converged) continue;
    const cplx gamma = al * (y - al) - 1.0;
    if (std::abs(gamma) < 1e-6 || std::abs(l * l - 1.0) < 1e-6) continue;
    Representation r = build(l, al);
    if (!is_irreducible(r, {Word::generator("t"), Word::generator("a")})) continue;
    return r;
  }
  return std::nullopt;
}

MultiPoly knot_curve() { return parse_poly("1 - y - y^2 + (-1 + y)*x^2", {"x", "y"}); }
MultiPoly sister_curve() { return parse_poly("1 + (-1 + y)*x^2", {"x", "y"}); }
MultiPoly knot_variety() { return parse_poly("(2 - y)*(1 - y - y^2 + (-1 + y)*x^2)", {"x", "y"}); }
MultiPoly sister_variety() { return parse_poly("(2 - y)*(1 - y - y^2)*(1 + (-1 + y)*x^2)", {"x", "y"}); }

}  // namespace charmut::fig8
