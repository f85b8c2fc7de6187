#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charmut/curve.hpp"
#include "charmut/error.hpp"
#include "charmut/fig8.hpp"
#include "charmut/golden.hpp"
#include "charmut/io.hpp"
#include "charmut/mutation.hpp"
#include "charmut/report.hpp"
#include "charmut/trace.hpp"

namespace py = pybind11;
using namespace charmut;

namespace {

using Matrix = std::array<std::array<cplx, 2>, 2>;

Mat2C to_mat(const Matrix& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }
Matrix from_mat(const Mat2C& m) { return {{{m.a, m.b}, {m.c, m.d}}}; }

Representation make_rep(const Presentation& p, const std::map<std::string, Matrix>& images, bool psl2) {
  Representation r{p, {}, psl2 ? RepMode::PSL2 : RepMode::SL2};
  for (const auto& g : p.generators) {
    auto it = images.find(g);
    if (it == images.end()) throw Error(ErrorKind::GeneratorNotInPresentation, "no image for generator '" + g + "'");
    r.images[g] = to_mat(it->second);
  }
  return r;
}

std::map<std::string, Matrix> images_of(const Representation& r) {
  std::map<std::string, Matrix> out;
  for (const auto& [g, m] : r.images) out[g] = from_mat(m);
  return out;
}

py::dict analysis_dict(const CurveAnalysis& a) {
  py::dict d;
  d["degree"] = a.degree;
  d["smooth_affine"] = a.smooth_affine;
  d["smooth_at_infinity"] = a.smooth_at_infinity;
  d["smoothness_certified"] = a.smoothness_certified;
  d["genus"] = a.genus ? py::cast(*a.genus) : py::none();
  if (a.parametrization)
    d["parametrization"] = py::make_tuple(a.parametrization->first.to_string(), a.parametrization->second.to_string());
  else
    d["parametrization"] = py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Character varieties of mutant 3-manifold groups";

  static py::exception<Error> error(m, "CharmutError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def("version", [] { return std::string(library_version()); });

  m.def(
      "normalize_word",
      [](const std::string& word, const std::vector<std::string>& gens) { return parse_word(word, gens).to_string(); },
      py::arg("word"), py::arg("gens"), "Freely reduced form of a word.");

  m.def(
      "reduce_trace",
      [](const std::string& word, const std::vector<std::string>& gens) {
        return reduce_trace(parse_word(word, gens), gens).to_string();
      },
      py::arg("word"), py::arg("gens"), "tr(word) as a polynomial in Fricke coordinates.");

  m.def(
      "trace_oracle",
      [](const std::string& word, const std::vector<std::string>& gens, int trials, std::uint64_t seed) {
        return oracle_check(parse_word(word, gens), gens, trials, seed);
      },
      py::arg("word"), py::arg("gens"), py::arg("trials") = 20, py::arg("seed") = 0);

  py::class_<Presentation>(m, "Presentation")
      .def_readonly("name", &Presentation::name)
      .def_readonly("generators", &Presentation::generators)
      .def_property_readonly("relators",
                             [](const Presentation& p) {
                               std::vector<std::string> out;
                               for (const auto& r : p.relators) out.push_back(r.to_string());
                               return out;
                             })
      .def("__repr__", [](const Presentation& p) { return "<Presentation " + p.name + ">"; });

  m.def(
      "parse_presentation", [](const std::string& text) { return parse_presentation(text).presentation; },
      py::arg("text"));
  m.def(
      "load_presentation", [](const std::string& path) { return load_presentation(path).presentation; },
      py::arg("path"));
  m.def("h1", &abelianization_invariants, py::arg("presentation"), "Invariant factors of H_1, free part as 0.");
  m.def(
      "abelian_locus",
      [](const Presentation& p, const std::string& gen, const std::string& var) {
        return abelian_locus(p, gen, var).to_string();
      },
      py::arg("presentation"), py::arg("gen"), py::arg("var") = "y");

  m.def(
      "relator_residual",
      [](const Presentation& p, const std::map<std::string, Matrix>& images, bool psl2) {
        return relator_residual(make_rep(p, images, psl2));
      },
      py::arg("presentation"), py::arg("images"), py::arg("psl2") = false);

  m.def(
      "analyze_curve",
      [](const std::string& poly, const std::string& v0, const std::string& v1) {
        return analysis_dict(curve_analyze(PlaneCurve(parse_poly(poly, {v0, v1}), {v0, v1})));
      },
      py::arg("poly"), py::arg("x") = "x", py::arg("y") = "y");

  auto fig8 = m.def_submodule("fig8", "Figure-eight knot and its sister");
  fig8.def("knot_group", [] { return fig8::knot_group(); });
  fig8.def("sister_group", [] { return fig8::sister_group(); });
  fig8.def("knot_curve", [] { return fig8::knot_curve().to_string(); });
  fig8.def("sister_curve", [] { return fig8::sister_curve().to_string(); });
  fig8.def(
      "sample",
      [](const Presentation& p, std::uint64_t seed) -> std::optional<std::map<std::string, Matrix>> {
        Rng rng(seed);
        auto r = fig8::sample_irreducible(p, rng);
        if (!r) return std::nullopt;
        return images_of(*r);
      },
      py::arg("group"), py::arg("seed"), "Generator images of a random irreducible rep, or None.");
  fig8.def(
      "mutate",
      [](const std::map<std::string, Matrix>& images) {
        const Representation knot = make_rep(fig8::knot_group(), images, false);
        const auto m = mutate_hnn(fig8::to_fibred(knot), fig8::fibre_split());
        return images_of(fig8::mutant_to_sister(m.rep));
      },
      py::arg("images"), "Mutate a knot group rep along the fibre; returns sister group images.");
  fig8.def(
      "golden", [](std::uint64_t seed) { return fig8::golden(seed).to_json(); }, py::arg("seed") = 0,
      "Golden check suite as a JSON report.");
}
