#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "charmut/curve.hpp"
#include "charmut/error.hpp"
#include "charmut/fig8.hpp"
#include "charmut/golden.hpp"
#include "charmut/io.hpp"
#include "charmut/mutation.hpp"
#include "charmut/report.hpp"
#include "charmut/trace.hpp"

namespace charmut::cli {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string json;
  bool quiet = false;

  Tolerances tolerances() const {
    Tolerances t;
    if (tol) t.character = *tol;
    return t;
  }
};

/// Errors that mean the input was unusable rather than a claim failing.
bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownGenerator:
    case ErrorKind::MalformedToken:
    case ErrorKind::ZeroExponent:
    case ErrorKind::VariableAbsent:
    case ErrorKind::ParseError:
    case ErrorKind::AlphabetTooLarge:
    case ErrorKind::GeneratorNotInPresentation:
    case ErrorKind::DegreeTooLarge:
    case ErrorKind::UnsupportedDegree:
    case ErrorKind::FileNotFound:
    case ErrorKind::InvariantViolation:
    case ErrorKind::TauIncomplete:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

/// Splits "f, g" at the top-level comma.
std::pair<std::string, std::string> split_pair(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw Error(ErrorKind::ParseError, fmt::format("expected two comma-separated components in '{}'", s));
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, std::string command) : out_(out), err_(err) {
    report_.header.command = std::move(command);
  }

  Report& report() { return report_; }

  int finish(const Common& c) {
    report_.header.seed = c.seed;
    report_.header.tolerances = c.tolerances();
    if (!c.json.empty()) {
      std::ofstream f(c.json, std::ios::binary);
      if (!f) {
        err_ << "error: cannot write " << c.json << "\n";
        return 1;
      }
      f << report_.to_json();
    }
    if (!c.quiet || !report_.all_pass()) out_ << report_.to_text(c.quiet);
    return report_.exit_code();
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Report report_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Character-variety mutation toolkit", "charmut"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "random seed")->default_val(0);
  app.add_option("--tol", c.tol, "character-match tolerance");
  app.add_option("--json", c.json, "write the JSON report here");
  app.add_flag("--quiet", c.quiet, "print failures only");
  app.set_version_flag("--version", std::string(library_version()));

  // trace-reduce
  auto* trace = app.add_subcommand("trace-reduce", "rewrite tr(word) in trace coordinates");
  std::string gens, word_text;
  int oracle = 0;
  trace->add_option("--gens", gens, "generators, space separated")->required();
  trace->add_option("--word", word_text, "word, e.g. \"a b a^-1\"")->required();
  trace->add_option("--oracle", oracle, "compare against N random matrix tuples")->check(CLI::NonNegativeNumber);

  // rep
  auto* rep = app.add_subcommand("rep", "inspect a representation");
  rep->require_subcommand(1);
  std::string group_path, rep_path, tau_name;
  std::vector<CLI::App*> rep_cmds;
  const std::pair<const char*, const char*> rep_subs[] = {
      {"check", "relator residual and determinants"},
      {"character", "traces on the character test set"},
      {"centraliser", "PSL2 centraliser class of the image"},
      {"lift-search", "sign lift whose character is tau-invariant"}};
  for (const auto& [name, help] : rep_subs) {
    auto* sc = rep->add_subcommand(name, help);
    sc->add_option("--group", group_path, "presentation file")->required();
    sc->add_option("--rep", rep_path, "representation JSON")->required();
    if (std::string_view(name) == "lift-search")
      sc->add_option("--tau", tau_name, "endo in the group file, or a catalog surface")->required();
    rep_cmds.push_back(sc);
  }

  // mutate
  auto* mutate = app.add_subcommand("mutate", "mutate a representation along an HNN splitting");
  std::string split_path, surface_name, out_path;
  mutate->add_option("--split", split_path, "splitting file")->required();
  mutate->add_option("--rep", rep_path, "representation JSON")->required();
  mutate->add_option("--surface", surface_name, "surface id, must match the splitting");
  mutate->add_option("--out", out_path, "write the mutant here");

  // curve
  auto* curve = app.add_subcommand("curve", "plane-curve tools");
  curve->require_subcommand(1);
  std::string poly_text, vars_text = "x,y", map_vars_text = "X,y", map_text, inv_text, source_text, target_text, extra_text;
  auto* analyze = curve->add_subcommand("analyze", "smoothness, genus, parametrization, points at infinity");
  analyze->add_option("--poly", poly_text)->required();
  analyze->add_option("--vars", vars_text, "two variables")->default_val("x,y");
  auto* mapv = curve->add_subcommand("map-verify", "exact birational check between curves linear in X");
  mapv->add_option("--map", map_text)->required();
  mapv->add_option("--inv", inv_text)->required();
  mapv->add_option("--source", source_text)->required();
  mapv->add_option("--target", target_text)->required();
  mapv->add_option("--vars", map_vars_text, "two variables")->default_val("X,y");
  mapv->add_option("--extra", extra_text, "extra locus in the second variable");

  // fig8
  auto* fig8cmd = app.add_subcommand("fig8", "figure-eight golden suite");
  bool all = false;
  fig8cmd->add_flag("--all", all, "run every check")->required();

  auto* catalog = app.add_subcommand("catalog", "list the built-in mutation surfaces");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  std::string command;
  for (std::size_t i = 0; i < args.size(); ++i) command += (i ? " " : "") + args[i];
  Runner runner(out, err, command);
  Report& r = runner.report();
  const Tolerances tol = c.tolerances();

  try {
    if (trace->parsed()) {
      r.suite = "trace-reduce";
      const auto alphabet = split_ws(gens);
      const Word w = parse_word(word_text, alphabet);
      const TraceExpression expr = reduce_trace(w, alphabet);
      r.add("reduce", true, std::nullopt, Provenance::Trivial, expr.to_string());
      if (!c.quiet) out << expr.to_string() << "\n";
      if (oracle > 0) {
        const double e = oracle_check(w, alphabet, oracle, c.seed);
        r.add("oracle", e < 1e-8, e, Provenance::Derived, fmt::format("{} trials", oracle));
        if (!c.quiet) out << fmt::format("oracle max relative error: {:.3e}\n", e);
      }
      if (!c.json.empty() || !r.all_pass()) return runner.finish(c);
      return 0;
    }

    if (rep->parsed()) {
      const PresentationFile pf = load_presentation(group_path);
      const Representation rp = load_rep(rep_path, pf.presentation, 1e-7);
      std::vector<Word> gens_w;
      for (const auto& g : pf.presentation.generators) gens_w.push_back(Word::generator(g));
      if (rep_cmds[0]->parsed()) {
        r.suite = "rep check";
        const double res = relator_residual(rp);
        r.add("relators", res < 1e-7, res, Provenance::Trivial);
        bool irr = false;
        try {
          irr = is_irreducible(rp, gens_w, tol.rank);
        } catch (const Error&) {
        }
        r.add("irreducible", true, std::nullopt, Provenance::Derived, irr ? "irreducible" : "reducible");
      } else if (rep_cmds[1]->parsed()) {
        r.suite = "rep character";
        const auto words = character_testset(pf.presentation.generators);
        const auto ch = character_of(rp, words);
        for (std::size_t i = 0; i < words.size(); ++i)
          r.add(fmt::format("{}{}", ch.squared ? "tr^2 " : "tr ", words[i].to_string()), true, std::nullopt,
                Provenance::Trivial, fmt::format("{:.12g}{:+.12g}i", ch.values[i].real(), ch.values[i].imag()));
      } else if (rep_cmds[2]->parsed()) {
        r.suite = "rep centraliser";
        const auto cls = centraliser_classify(rp, gens_w, tol.rank);
        r.add("centraliser", true, std::nullopt, Provenance::Derived, std::string(to_string(cls)));
      } else {
        r.suite = "rep lift-search";
        Representation lift;
        if (const auto it = pf.endos.find(tau_name); it != pf.endos.end()) {
          lift = find_tau_invariant_lift(rp, it->second, tol);
        } else {
          lift = find_tau_invariant_lift(rp, catalog_surface(parse_surface_id(tau_name)), tol);
        }
        std::vector<std::string> flips;
        for (const auto& g : pf.presentation.generators)
          if (distance(lift.image(g), rp.image(g)) > 1e-12) flips.push_back(g);
        r.add("lift found", true, std::nullopt, Provenance::Derived,
              flips.empty() ? std::string("no sign flips") : fmt::format("flip {}", fmt::join(flips, " ")));
      }
      return runner.finish(c);
    }

    if (mutate->parsed()) {
      r.suite = "mutate";
      const HnnSplitting split = load_split(split_path);
      if (!surface_name.empty() && parse_surface_id(surface_name) != split.surface)
        throw Error(ErrorKind::InvariantViolation,
                    fmt::format("--surface {} does not match the splitting's {}", surface_name, to_string(split.surface)));
      const Representation rp = load_rep(rep_path, split.group, 1e-7);
      try {
        const MutationResult m = mutate_hnn(rp, split, tol);
        r.add("mutant relators", m.relator_residual < 1e-7, m.relator_residual, Provenance::Derived,
              fmt::format("conjugator {}", m.conjugator.to_string()));
        const std::string text = rep_to_json(m.rep);
        if (!out_path.empty()) {
          std::ofstream f(out_path, std::ios::binary);
          if (!f) throw Error(ErrorKind::FileNotFound, fmt::format("cannot write '{}'", out_path));
          f << text;
        } else if (!c.quiet) {
          out << text;
        }
      } catch (const Error& e) {
        if (is_input_error(e.kind())) throw;
        r.add("mutation", false, std::nullopt, Provenance::Derived, e.what());
      }
      return runner.finish(c);
    }

    if (curve->parsed()) {
      const auto [v0, v1] = split_pair(analyze->parsed() ? vars_text : map_vars_text);
      const std::vector<std::string> vars{split_ws(v0).at(0), split_ws(v1).at(0)};
      if (analyze->parsed()) {
        r.suite = "curve analyze";
        const PlaneCurve pc(parse_poly(poly_text, vars), {vars[0], vars[1]});
        const CurveAnalysis a = curve_analyze(pc);
        r.add("degree", true, std::nullopt, Provenance::Trivial, std::to_string(a.degree));
        r.add("smooth affine", true, std::nullopt, Provenance::Derived,
              fmt::format("{}{}", a.smooth_affine ? "yes" : "no", a.smoothness_certified ? "" : " (numeric)"));
        r.add("smooth at infinity", true, std::nullopt, Provenance::Derived, a.smooth_at_infinity ? "yes" : "no");
        r.add("genus", true, std::nullopt, Provenance::Derived, a.genus ? std::to_string(*a.genus) : "unknown");
        if (a.parametrization)
          r.add("parametrization", true, std::nullopt, Provenance::Derived,
                fmt::format("{} = {}, {} = {}", vars[0], a.parametrization->first.to_string(), vars[1],
                            a.parametrization->second.to_string()));
        const auto scan = ideal_scan(pc);
        for (const auto& p : scan.points)
          r.add("point at infinity", true, std::nullopt, Provenance::Derived,
                fmt::format("[{:.6g}{:+.6g}i : {:.6g}{:+.6g}i : 0] mult {}, {} {}, {} {}", p.first.real(),
                            p.first.imag(), p.second.real(), p.second.imag(), p.multiplicity, vars[0],
                            p.first_unbounded ? "unbounded" : "bounded", vars[1],
                            p.second_unbounded ? "unbounded" : "bounded"));
      } else {
        r.suite = "curve map-verify";
        auto parse_map = [&](const std::string& text) {
          const auto [f0, f1] = split_pair(text);
          return RationalPlaneMap{{parse_rational(f0, vars), parse_rational(f1, vars)}};
        };
        const PlaneCurve src(parse_poly(source_text, vars), {vars[0], vars[1]});
        const PlaneCurve tgt(parse_poly(target_text, vars), {vars[0], vars[1]});
        const MultiPoly extra = extra_text.empty() ? MultiPoly() : parse_poly(extra_text, vars);
        try {
          const auto b = birational_verify(parse_map(map_text), parse_map(inv_text), src, tgt, extra);
          r.add("pushforward is zero", b.pushforward_zero && b.inverse_pushforward_zero, std::nullopt,
                Provenance::Derived);
          r.add("round trip is the identity", b.roundtrip_identity && b.inverse_roundtrip_identity, std::nullopt,
                Provenance::Derived);
          r.add("exceptional points", true, std::nullopt, Provenance::Derived,
                fmt::format("{} on source, {} on target", b.source_exceptional_count, b.target_exceptional_count));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::PushforwardNonzero) throw;
          r.add("pushforward is zero", false, std::nullopt, Provenance::Derived, e.what());
        }
      }
      return runner.finish(c);
    }

    if (fig8cmd->parsed()) {
      Report g = fig8::golden(c.seed, tol);
      g.header.command = r.header.command;
      r = std::move(g);
      return runner.finish(c);
    }

    if (catalog->parsed()) {
      r.suite = "catalog";
      for (const auto& s : builtin_catalog()) {
        std::string detail = fmt::format("generators {}", fmt::join(s.generators, " "));
        if (s.tau_total) {
          for (const auto& g : s.generators) detail += fmt::format("; tau({}) = {}", g, s.tau_images.at(g).to_string());
        } else {
          detail += "; tau partial";
        }
        for (const auto& tc : s.trace_conditions)
          detail += fmt::format("; tr({}) = tr({})", tc.lhs.to_string(), tc.rhs.to_string());
        r.add(s.name(), true, std::nullopt, Provenance::Trivial, detail);
      }
      return runner.finish(c);
    }
  } catch (const Error& e) {
    if (is_input_error(e.kind()) || e.kind() == ErrorKind::NotFound) {
      err << "error: " << e.what() << "\n";
      return is_input_error(e.kind()) ? 1 : 2;
    }
    err << "check failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace charmut::cli
