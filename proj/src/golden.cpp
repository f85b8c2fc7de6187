#include "charmut/golden.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "charmut/curve.hpp"
#include "charmut/error.hpp"
#include "charmut/fig8.hpp"
#include "charmut/mutation.hpp"

namespace charmut::fig8 {

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kQY{"X", "y"};

std::string join(const std::vector<std::int64_t>& v) {
  return fmt::format("[{}]", fmt::join(v, ", "));
}

/// Geometric sequence from 10^-1 towards 10^-6 with a seeded phase.
std::vector<cplx> z_path(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double theta = phase(rng);
  std::vector<cplx> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = -1.0 - 5.0 * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(1, n - 1));
    out.push_back(std::polar(std::pow(10.0, e), theta));
  }
  return out;
}

}  // namespace

double relative_residual(const MultiPoly& p, cplx x, cplx y) {
  const auto& vars = p.variables();
  double scale = 1.0;
  cplx value = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx term = c.get_d();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const cplx v = vars[i] == "x" || vars[i] == "X" ? x : y;
      term *= std::pow(v, e[i]);
    }
    value += term;
    scale += std::abs(term);
  }
  return std::abs(value) / scale;
}

CharacterSweep sweep_characters(const Presentation& group, const MultiPoly& variety, std::size_t count,
                                std::uint64_t seed, std::size_t max_attempts) {
  CharacterSweep out;
  while (out.reps.size() < count && out.attempts < max_attempts) {
    Rng rng(seed + out.attempts);
    ++out.attempts;
    auto rep = sample_irreducible(group, rng);
    if (!rep) continue;
    const auto pt = xy(*rep);
    bool fresh = true;
    for (const auto& q : out.points)
      fresh = fresh && std::max(std::abs(q.first - pt.first), std::abs(q.second - pt.second)) > 1e-6;
    if (!fresh) continue;
    out.max_residual = std::max(out.max_residual, relative_residual(variety, pt.first, pt.second));
    out.points.push_back(pt);
    out.reps.push_back(std::move(*rep));
  }
  return out;
}

Report golden(std::uint64_t seed, const Tolerances& tol) {
  Report r;
  r.suite = "fig8";
  r.header.seed = seed;
  r.header.tolerances = tol;
  const auto P = Provenance::Paper, D = Provenance::Derived;

  // Presentations and homology.
  const Presentation& knot = knot_group();
  const Presentation& sister = sister_group();
  r.add("presentation of Gamma", knot.generators.size() == 2 && knot.relators.size() == 1, std::nullopt, P,
        knot.relators.front().to_string());
  r.add("presentation of Gamma_tau", sister.generators.size() == 2 && sister.relators.size() == 1, std::nullopt, P,
        sister.relators.front().to_string());
  const auto h_knot = abelianization_invariants(knot);
  const auto h_sister = abelianization_invariants(sister);
  r.add("H1(Gamma) = [0]", h_knot == std::vector<std::int64_t>{0}, std::nullopt, P, join(h_knot));
  r.add("H1(Gamma_tau) = [5, 0]", h_sister == std::vector<std::int64_t>{5, 0}, std::nullopt, P, join(h_sister));

  const MultiPoly ab_knot = abelian_locus(knot, "a");
  const MultiPoly ab_sister = abelian_locus(sister, "a");
  r.add("abelian locus of Gamma is 2 - y", equal_up_to_unit(ab_knot, parse_poly("2 - y")), std::nullopt, P,
        ab_knot.to_string());
  r.add("abelian locus of Gamma_tau is (2 - y)(1 - y - y^2)",
        equal_up_to_unit(ab_sister, parse_poly("(2 - y)*(1 - y - y^2)")), std::nullopt, P, ab_sister.to_string());

  // Sampled characters.
  const CharacterSweep sk = sweep_characters(knot, knot_variety(), 30, seed);
  const CharacterSweep ss = sweep_characters(sister, sister_variety(), 30, seed + 1'000'000);
  r.add("30 irreducible characters of Gamma on its variety", sk.reps.size() >= 30 && sk.max_residual < tol.character,
        sk.max_residual, P, fmt::format("{} found in {} attempts", sk.reps.size(), sk.attempts));
  r.add("30 irreducible characters of Gamma_tau on its variety",
        ss.reps.size() >= 30 && ss.max_residual < tol.character, ss.max_residual, P,
        fmt::format("{} found in {} attempts", ss.reps.size(), ss.attempts));
  double on_x0 = 0.0;
  for (const auto& [x, y] : sk.points) on_x0 = std::max(on_x0, relative_residual(knot_curve(), x, y));
  for (const auto& [x, y] : ss.points) on_x0 = std::max(on_x0, relative_residual(sister_curve(), x, y));
  r.add("irreducible samples lie on the X0 factor", on_x0 < tol.character, on_x0, D);

  // Quotient map.
  const PlaneCurve knot_c(knot_curve(), {"x", "y"}, "(x,y) SL2");
  const PlaneCurve sister_c(sister_curve(), {"x", "y"}, "(x,y) SL2");
  const PlaneCurve knot_q = quotient_map(knot_c);
  const PlaneCurve sister_q = quotient_map(sister_c);
  r.add("quotient of X0(M) is 1 - y - y^2 + (-1 + y) X",
        equal_up_to_unit(knot_q.poly(), parse_poly("1 - y - y^2 + (-1 + y)*X", kQY)), std::nullopt, P,
        knot_q.poly().to_string());
  r.add("quotient of X0(M_tau) is 1 + (-1 + y) X", equal_up_to_unit(sister_q.poly(), parse_poly("1 + (-1 + y)*X", kQY)),
        std::nullopt, P, sister_q.poly().to_string());
  {
    const SignCharacter eps({{"t", -1}, {"a", 1}});
    bool same = true;
    for (const auto& rep : sk.reps) {
      const auto a = quotient_map(xy(rep));
      const auto b = quotient_map(xy(sign_twist(rep, eps)));
      same = same && a == b;
    }
    r.add("quotient map is constant on sign-twist orbits", same, std::nullopt, D,
          fmt::format("{} samples", sk.reps.size()));
  }

  // Genus contrast.
  const CurveAnalysis ak = curve_analyze(knot_c);
  const CurveAnalysis as = curve_analyze(sister_c);
  r.add("X0(M) is smooth of genus 1", ak.smooth_affine && ak.smooth_at_infinity && ak.genus == 1, std::nullopt, P,
        fmt::format("degree {}", ak.degree));
  r.add("X0(M_tau) is rational (genus 0)", as.parametrization.has_value() && as.genus == 0, std::nullopt, P,
        as.parametrization ? fmt::format("x = {}, y = {}", as.parametrization->first.to_string(),
                                         as.parametrization->second.to_string())
                           : std::string("no parametrization"));
  const CurveAnalysis aqk = curve_analyze(knot_q);
  const CurveAnalysis aqs = curve_analyze(sister_q);
  r.add("both quotient curves are rational", aqk.genus == 0 && aqs.genus == 0, std::nullopt, D);

  // The birational map between the quotient curves.
  try {
    const RationalPlaneMap mu{{parse_rational("1/(1 - y)", kQY), parse_rational("y", kQY)}};
    const RationalPlaneMap mu_inv{{parse_rational("(1 - y - y^2)/(1 - y)", kQY), parse_rational("y", kQY)}};
    const auto b = birational_verify(mu, mu_inv, knot_q, sister_q, ab_sister);
    r.add("mu pushes X0(M) onto X0(M_tau) exactly", b.pushforward_zero && b.inverse_pushforward_zero, std::nullopt, P);
    r.add("mu^-1 o mu is the identity exactly", b.roundtrip_identity && b.inverse_roundtrip_identity, std::nullopt, P);
    r.add("exceptional locus has 3 points on each curve",
          b.source_exceptional_count == 3 && b.target_exceptional_count == 3, std::nullopt, P,
          fmt::format("{} and {}", b.source_exceptional_count, b.target_exceptional_count));
  } catch (const Error& e) {
    r.add("mu pushes X0(M) onto X0(M_tau) exactly", false, std::nullopt, P, e.what());
  }

  // Dihedral representations.
  {
    double worst = 0.0;
    bool reducible = true;
    const auto roots = primitive_fifth_roots();
    for (const cplx u : roots) {
      const Representation rep = dihedral_rep(u);
      worst = std::max(worst, relator_residual(rep));
      const Representation fib = to_fibred(rep);
      reducible = reducible && !is_irreducible({fib.image("a"), fib.image("b")});
    }
    r.add("dihedral reps at the 4 roots of 1+u+u^2+u^3+u^4", roots.size() == 4 && worst < 1e-9, worst, P);
    r.add("dihedral reps are reducible on the fibre", reducible, std::nullopt, P);
  }

  // The H(z) family.
  {
    const cplx u = primitive_fifth_roots().front();
    double trace_err = 0.0, rel = 0.0;
    for (const cplx z : z_path(20, seed)) {
      const Representation rep = rho_z(u, z);
      const cplx tt = rep.image("t").trace();
      const cplx expect = (z + 1.0 / z) * (z + 1.0 / z);
      trace_err = std::max(trace_err, std::abs(tt * tt - expect) / std::max(1.0, std::abs(expect)));
      const double n = std::max(1.0, rep.image("t").max_norm());
      rel = std::max(rel, relator_residual(rep) / (n * n));
    }
    r.add("(tr rho_z(t))^2 = (z + 1/z)^2 on 20 samples", trace_err < 1e-9, trace_err, P);
    r.add("rho_z satisfies the Gamma_tau relator", rel < 1e-9, rel, D);

    std::vector<cplx> zs;
    // Down to 1e-7 so that |tr t| ~ 1/z clears the 1e6 blow-up threshold with margin.
    for (int k = 1; k <= 7; ++k) zs.push_back(std::pow(10.0, -k));
    const HnnSplitting split = fibre_split().mutant_split();
    const auto c = c_condition_check([&](cplx z) { return sister_to_mutant(rho_z(u, z)); }, split, zs);
    r.add("C1: fibre traces bounded", c.c1.pass, c.c1.residual, P);
    r.add("C2: traces match across the gluing", c.c2.pass, c.c2.residual, D);
    r.add("C3: fibre restriction reducible", c.c3.pass, c.c3.residual, P);
    r.add("C4 (heuristic): nonconstant path with trace blow-up", c.c4.nonconstant && c.c4.blowup_detected,
          c.c4.max_trace, P, "heuristic, no valuation certificate");
    r.add("rho_z image is commutative", c.abelian_image, std::nullopt, D,
          c.abelian_image ? "generator images commute" : "generator images do not commute");
  }

  // Mutation carries Gamma characters onto the sister curve.
  {
    std::size_t done = 0, skipped = 0;
    double worst_rel = 0.0, worst_curve = 0.0;
    for (const auto& rep : sk.reps) {
      if (done == 10) break;
      try {
        const auto m = mutate_hnn(to_fibred(rep), fibre_split(), tol);
        const Representation s = mutant_to_sister(m.rep);
        worst_rel = std::max(worst_rel, relator_residual(s));
        const auto [x, y] = xy(s);
        worst_curve = std::max(worst_curve, relative_residual(sister_curve(), x, y));
        ++done;
      } catch (const Error&) {
        ++skipped;
      }
    }
    r.add("mutants of Gamma reps satisfy the Gamma_tau relator", done == 10 && worst_rel < 1e-7, worst_rel, D,
          fmt::format("{} mutated, {} skipped", done, skipped));
    r.add("mutant characters lie on X0(M_tau)", done == 10 && worst_curve < tol.character, worst_curve, D);
  }
  return r;
}

}  // namespace charmut::fig8
