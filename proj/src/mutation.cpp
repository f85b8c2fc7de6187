#include "charmut/mutation.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "charmut/error.hpp"
#include "charmut/trace.hpp"

namespace charmut {

std::string_view to_string(SurfaceId id) {
  switch (id) {
    case SurfaceId::S3: return "S3";
    case SurfaceId::S4: return "S4";
    case SurfaceId::T1: return "T1";
    case SurfaceId::T2: return "T2";
    case SurfaceId::G2: return "G2";
  }
  return "?";
}

SurfaceId parse_surface_id(std::string_view name) {
  for (auto id : {SurfaceId::S3, SurfaceId::S4, SurfaceId::T1, SurfaceId::T2, SurfaceId::G2}) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorKind::ParseError, fmt::format("unknown surface '{}' (expected S3, S4, T1, T2 or G2)", name));
}

Endomorphism SymmetricSurface::tau() const {
  if (!tau_total) {
    throw Error(ErrorKind::TauIncomplete, fmt::format("the involution of {} is only partly specified", name()));
  }
  std::map<std::string, Word> images(tau_images.begin(), tau_images.end());
  return Endomorphism(generators, generators, std::move(images));
}

namespace {

SymmetricSurface make_surface(SurfaceId id, std::vector<std::string> gens, bool total,
                              std::vector<std::pair<const char*, const char*>> tau,
                              std::vector<std::pair<const char*, const char*>> conditions) {
  SymmetricSurface s;
  s.id = id;
  s.generators = std::move(gens);
  s.tau_total = total;
  for (const auto& [g, w] : tau) s.tau_images[g] = parse_word(w, s.generators);
  for (const auto& [l, r] : conditions) s.trace_conditions.push_back({parse_word(l, s.generators), parse_word(r, s.generators)});
  return s;
}

Presentation surface_presentation(const SymmetricSurface& s) {
  if (s.id == SurfaceId::G2) return g2_presentation();
  return Presentation{s.name(), s.generators, {}};
}

double trace_gap(const Representation& rep, const Word& a, const Word& b, bool squared) {
  const cplx ta = evaluate(rep, a).trace();
  const cplx tb = evaluate(rep, b).trace();
  return squared ? std::abs(ta * ta - tb * tb) : std::abs(ta - tb);
}

double conditions_residual(const Representation& rep, const SymmetricSurface& s, bool squared) {
  double worst = 0.0;
  for (const auto& c : s.trace_conditions) worst = std::max(worst, trace_gap(rep, c.lhs, c.rhs, squared));
  return worst;
}

bool contains_generator(const Word& w, std::string_view g) {
  return std::any_of(w.syllables().begin(), w.syllables().end(), [&](const Syllable& s) { return s.gen == g; });
}

Word substitute_words(const Word& w, const std::map<std::string, Word, std::less<>>& words) {
  Word out;
  for (const auto& s : w.syllables()) {
    auto it = words.find(s.gen);
    if (it == words.end()) throw Error(ErrorKind::InconsistentSplitting, fmt::format("no embedding word for '{}'", s.gen));
    out = out * it->second.pow(s.exp);
  }
  return out;
}

void require_images(const Representation& rep, const std::vector<std::string>& gens) {
  for (const auto& g : gens) {
    if (!rep.images.count(g)) {
      throw Error(ErrorKind::InconsistentSplitting, fmt::format("representation has no image for '{}'", g));
    }
  }
}

}  // namespace

const std::vector<SymmetricSurface>& builtin_catalog() {
  static const std::vector<SymmetricSurface> catalog = [] {
    std::vector<SymmetricSurface> c;
    c.push_back(make_surface(SurfaceId::S3, {"a", "b"}, false, {{"a", "b"}}, {{"a", "b"}}));
    c.push_back(make_surface(SurfaceId::S4, {"a", "b", "c"}, false, {}, {{"a", "b"}, {"c", "a b c"}}));
    c.push_back(make_surface(SurfaceId::T1, {"a", "b"}, true, {{"a", "a^-1"}, {"b", "a b^-1 a^-1"}}, {}));
    c.push_back(make_surface(SurfaceId::T2, {"a", "b", "c"}, false, {{"a", "a^-1"}, {"b", "a b^-1 a^-1"}},
                             {{"c", "c^-1 a b a^-1 b^-1"}}));
    SymmetricSurface g2;
    g2.id = SurfaceId::G2;
    g2.generators = g2_presentation().generators;
    g2.tau_total = true;
    for (const auto& g : g2.generators) g2.tau_images[g] = g2_tau().image(g);
    c.push_back(std::move(g2));
    return c;
  }();
  return catalog;
}

const SymmetricSurface& catalog_surface(SurfaceId id) {
  for (const auto& s : builtin_catalog()) {
    if (s.id == id) return s;
  }
  throw Error(ErrorKind::NotFound, "surface missing from catalog");
}

Word SurfaceEmbedding::embed(const Word& surface_word) const { return substitute_words(surface_word, words); }

Representation restrict_to_surface(const Representation& rep, const SurfaceEmbedding& emb) {
  Representation out{surface_presentation(emb.surface), {}, rep.mode};
  for (const auto& g : emb.surface.generators) {
    auto it = emb.words.find(g);
    if (it == emb.words.end()) throw Error(ErrorKind::InconsistentSplitting, fmt::format("surface generator '{}' is not embedded", g));
    out.images[g] = evaluate(rep, it->second);
  }
  return out;
}

InvarianceResult tau_invariance_check(const Representation& rep, const SurfaceEmbedding& emb, const Tolerances& tol) {
  const Representation r = restrict_to_surface(rep, emb);
  const bool squared = rep.mode == RepMode::PSL2;
  InvarianceResult out;
  if (emb.surface.tau_total) {
    const auto testset = character_testset(emb.surface.generators);
    const auto lhs = character_of(r, testset);
    const auto rhs = character_of(precompose(r, emb.surface.tau()), testset);
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
      const double scale = std::max(1.0, std::abs(lhs.values[i]));
      out.residual = std::max(out.residual, std::abs(lhs.values[i] - rhs.values[i]) / scale);
    }
  } else {
    out.by_conditions = true;
    out.residual = conditions_residual(r, emb.surface, squared);
  }
  out.invariant = out.residual <= tol.character;
  return out;
}

Representation find_tau_invariant_lift(const Representation& rep, const SymmetricSurface& surface, const Tolerances& tol) {
  if (surface.tau_total) return find_tau_invariant_lift(rep, surface.tau(), tol);
  const auto& gens = surface.generators;
  require_images(rep, gens);
  for (const auto& flips : lift_search_order(gens.size())) {
    Representation sigma = rep;
    sigma.mode = RepMode::SL2;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (flips[i]) sigma.images[gens[i]] = -sigma.images[gens[i]];
    }
    if (conditions_residual(sigma, surface, false) <= tol.character) return sigma;
  }
  throw Error(ErrorKind::NotFound, fmt::format("no sign lift satisfies the trace conditions of {}", surface.name()));
}

double condition_hit_fraction(const SymmetricSurface& surface, int samples, Rng& rng, const Tolerances& tol) {
  // Short products of elementary integer matrices: traces are small integers,
  // so coincidences between them have positive probability.
  const std::array<Mat2C, 4> elementary{Mat2C{1.0, 1.0, 0.0, 1.0}, Mat2C{1.0, -1.0, 0.0, 1.0}, Mat2C{1.0, 0.0, 1.0, 1.0},
                                        Mat2C{1.0, 0.0, -1.0, 1.0}};
  std::uniform_int_distribution<int> pick(0, 3), len(1, 3);
  int hits = 0;
  for (int n = 0; n < samples; ++n) {
    Representation rep{surface_presentation(surface), {}, RepMode::SL2};
    for (const auto& g : surface.generators) {
      Mat2C m;
      for (int k = len(rng); k > 0; --k) m *= elementary[static_cast<std::size_t>(pick(rng))];
      rep.images[g] = m;
    }
    if (conditions_residual(rep, surface, false) <= tol.character) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

Presentation SeparatingSplitting::amalgam() const {
  Presentation p{minus.name + "*" + plus.name, minus.generators, minus.relators};
  p.generators.insert(p.generators.end(), plus.generators.begin(), plus.generators.end());
  p.relators.insert(p.relators.end(), plus.relators.begin(), plus.relators.end());
  for (const auto& g : catalog_surface(surface).generators) p.relators.push_back(minus_words.at(g) * plus_words.at(g).inverse());
  return p;
}

Presentation SeparatingSplitting::mutant() const {
  const auto& s = catalog_surface(surface);
  const Endomorphism tau = s.tau();
  Presentation p = amalgam();
  p.name = minus.name + "*" + plus.name + "^tau";
  p.relators.resize(minus.relators.size() + plus.relators.size());
  for (const auto& g : s.generators) {
    p.relators.push_back(substitute_words(tau.image(g), minus_words) * plus_words.at(g).inverse());
  }
  return p;
}

void SeparatingSplitting::validate() const {
  std::set<std::string> names(minus.generators.begin(), minus.generators.end());
  for (const auto& g : plus.generators) {
    if (!names.insert(g).second) {
      throw Error(ErrorKind::InconsistentSplitting, fmt::format("generator '{}' appears on both sides", g));
    }
  }
  for (const auto& g : catalog_surface(surface).generators) {
    auto m = minus_words.find(g);
    auto p = plus_words.find(g);
    if (m == minus_words.end() || p == plus_words.end()) {
      throw Error(ErrorKind::InconsistentSplitting, fmt::format("surface generator '{}' is not embedded on both sides", g));
    }
    for (const auto& s : m->second.syllables()) {
      if (!minus.has_generator(s.gen)) throw Error(ErrorKind::InconsistentSplitting, "minus-side word leaves its side");
    }
    for (const auto& s : p->second.syllables()) {
      if (!plus.has_generator(s.gen)) throw Error(ErrorKind::InconsistentSplitting, "plus-side word leaves its side");
    }
  }
}

std::vector<std::string> HnnSplitting::base_generators() const {
  std::vector<std::string> out;
  for (const auto& g : group.generators) {
    if (g != stable) out.push_back(g);
  }
  return out;
}

SurfaceEmbedding HnnSplitting::embedding() const { return SurfaceEmbedding{catalog_surface(surface), surface_words}; }

Presentation HnnSplitting::mutant() const {
  const auto emb = embedding();
  const Endomorphism tau = emb.surface.tau();
  const Word k = Word::generator(stable);
  Presentation p{group.name + "^tau", group.generators, {}};
  for (const auto& r : group.relators) {
    if (!contains_generator(r, stable)) p.relators.push_back(r);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Word src = emb.embed(tau.image(emb.surface.generators[i]));
    p.relators.push_back(k.inverse() * src * k * edges[i].second.inverse());
  }
  return p;
}

HnnSplitting HnnSplitting::mutant_split() const {
  const auto emb = embedding();
  const Endomorphism tau = emb.surface.tau();
  HnnSplitting out;
  out.group = mutant();
  out.stable = stable;
  out.surface = surface;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& g = emb.surface.generators[i];
    const Word src = emb.embed(tau.image(g));
    out.surface_words[g] = src;
    out.edges.emplace_back(src, edges[i].second);
  }
  return out;
}

void HnnSplitting::validate() const {
  group.validate();
  if (!group.has_generator(stable)) {
    throw Error(ErrorKind::InconsistentSplitting, fmt::format("stable letter '{}' is not a generator", stable));
  }
  const auto& s = catalog_surface(surface);
  if (edges.size() != s.generators.size()) {
    throw Error(ErrorKind::InconsistentSplitting,
                fmt::format("{} edges given for a surface with {} generators", edges.size(), s.generators.size()));
  }
  const Word k = Word::generator(stable);
  std::vector<Word> expected;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& [a1, a2] = edges[i];
    if (contains_generator(a1, stable) || contains_generator(a2, stable)) {
      throw Error(ErrorKind::InconsistentSplitting, "edge words must avoid the stable letter");
    }
    auto it = surface_words.find(s.generators[i]);
    if (it == surface_words.end() || it->second != a1) {
      throw Error(ErrorKind::InconsistentSplitting,
                  fmt::format("edge {} source must be the embedding of surface generator '{}'", i + 1, s.generators[i]));
    }
    expected.push_back(k.inverse() * a1 * k * a2.inverse());
  }
  std::vector<Word> actual;
  for (const auto& r : group.relators) {
    if (contains_generator(r, stable)) actual.push_back(r);
  }
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  if (expected != actual) {
    throw Error(ErrorKind::InconsistentSplitting, "relators involving the stable letter must be exactly k^-1 a1 k a2^-1 per edge");
  }
}

namespace {

void require_mutable(const Representation& rep, const SurfaceEmbedding& emb, const Tolerances& tol) {
  const auto inv = tau_invariance_check(rep, emb, tol);
  if (!inv.invariant) {
    throw Error(ErrorKind::NotTentativelyMutable,
                fmt::format("character on {} is not tau-invariant (residual {:.3g})", emb.surface.name(), inv.residual));
  }
}

void require_trivial_centraliser(const std::vector<Mat2C>& m, RepMode mode, const Tolerances& tol) {
  if (mode != RepMode::PSL2) return;
  const auto c = centraliser_classify(m, tol.rank);
  if (c != CentraliserClass::Trivial) {
    throw Error(ErrorKind::ConjugatorAmbiguous, fmt::format("surface restriction has {} centraliser", to_string(c)));
  }
}

void require_residual(Representation& rep, double& out, double limit) {
  out = relator_residual(rep);
  if (out > limit) {
    throw Error(ErrorKind::RelatorResidualTooLarge, fmt::format("mutant relator residual {:.3g} exceeds {:.3g}", out, limit));
  }
}

}  // namespace

MutationResult mutate_separating(const Representation& rep, const SeparatingSplitting& split, const Tolerances& tol) {
  split.validate();
  const auto& surface = catalog_surface(split.surface);
  const Endomorphism tau = surface.tau();
  require_images(rep, split.minus.generators);
  require_images(rep, split.plus.generators);
  const SurfaceEmbedding minus_emb{surface, split.minus_words};
  require_mutable(rep, minus_emb, tol);

  std::vector<Mat2C> m1, m2;
  for (const auto& g : surface.generators) {
    const Mat2C lhs = evaluate(rep, split.minus_words.at(g));
    const Mat2C rhs = evaluate(rep, split.plus_words.at(g));
    const double gap = rep.mode == RepMode::SL2 ? distance(lhs, rhs) : std::min(distance(lhs, rhs), distance(lhs, -rhs));
    if (gap > tol.character) {
      throw Error(ErrorKind::InconsistentSplitting, fmt::format("sides disagree on surface generator '{}' ({:.3g})", g, gap));
    }
    m1.push_back(lhs);
    m2.push_back(evaluate(rep, minus_emb.embed(tau.image(g))));
  }
  const Mat2C x = conjugator_solve(m1, m2, tol);
  require_trivial_centraliser(m1, rep.mode, tol);

  MutationResult out;
  out.conjugator = x;
  out.rep = Representation{split.mutant(), {}, rep.mode};
  const Mat2C xi = x.inverse();
  for (const auto& g : split.minus.generators) out.rep.images[g] = xi * rep.image(g) * x;
  for (const auto& g : split.plus.generators) out.rep.images[g] = rep.image(g);
  for (std::size_t i = 0; i < surface.generators.size(); ++i) {
    const Mat2C moved = xi * m2[i] * x;
    const Mat2C target = evaluate(rep, split.plus_words.at(surface.generators[i]));
    const double gap = rep.mode == RepMode::SL2 ? distance(moved, target) : std::min(distance(moved, target), distance(moved, -target));
    if (gap > tol.character) {
      throw Error(ErrorKind::InconsistentSplitting, fmt::format("conjugated surface image misses the plus side ({:.3g})", gap));
    }
  }
  // Conjugating by -X gives the same matrices.
  out.alternate = out.rep;
  require_residual(out.rep, out.relator_residual, 1e-7);
  return out;
}

MutationResult mutate_hnn(const Representation& rep, const HnnSplitting& split, const Tolerances& tol) {
  split.validate();
  const auto emb = split.embedding();
  const Endomorphism tau = emb.surface.tau();
  require_images(rep, split.group.generators);
  require_mutable(rep, emb, tol);

  std::vector<Mat2C> m1, m2;
  for (const auto& g : emb.surface.generators) {
    m1.push_back(evaluate(rep, emb.words.at(g)));
    m2.push_back(evaluate(rep, emb.embed(tau.image(g))));
  }
  // X^-1 rho(tau a) X = rho(a) on the edge sources.
  const Mat2C x = conjugator_solve(m1, m2, tol);
  require_trivial_centraliser(m1, rep.mode, tol);

  MutationResult out;
  out.conjugator = x;
  out.rep = Representation{split.mutant(), rep.images, rep.mode};
  out.rep.images[split.stable] = x * rep.image(split.stable);
  out.alternate = out.rep;
  out.alternate.images[split.stable] = -out.rep.images[split.stable];
  require_residual(out.rep, out.relator_residual, 1e-7);
  return out;
}

}  // namespace charmut
