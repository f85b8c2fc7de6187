#include "charmut/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "charmut/error.hpp"

namespace charmut {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string_view keyword;
  std::string_view rest;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto sp = line.find_first_of(" \t");
      const std::string_view kw = line.substr(0, sp);
      out.push_back({number, kw, sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp))});
    }
    if (text.empty()) break;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, fmt::format("{}:{}: {}", source, line, msg));
}

std::pair<std::string_view, std::string_view> split_arrow(const std::string& source, const Line& l,
                                                          std::string_view text) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) fail(source, l.number, "expected '<lhs> -> <rhs>'");
  return {trim(text.substr(0, arrow)), trim(text.substr(arrow + 2))};
}

/// Shared state of the presentation and splitting parsers.
struct Parser {
  std::string source;
  bool allow_split = false;
  Presentation p;
  bool have_group = false, have_gens = false;
  std::map<std::string, Endomorphism, std::less<>> endos;
  std::optional<std::pair<std::string, std::size_t>> open_endo;
  std::map<std::string, Word> endo_images;
  std::size_t last_line = 0;

  std::string stable;
  std::vector<std::pair<Word, Word>> edges;
  std::optional<SurfaceId> surface;
  std::vector<std::pair<std::string, Word>> surface_words;

  Word word(const Line& l, std::string_view text) {
    if (!have_gens) fail(source, l.number, "word before the `gens` line");
    try {
      return parse_word(text, p.generators);
    } catch (const Error& e) {
      fail(source, l.number, e.what());
    }
  }

  void close_endo() {
    if (!open_endo) return;
    try {
      endos.emplace(open_endo->first, Endomorphism(p.generators, p.generators, endo_images));
    } catch (const Error& e) {
      fail(source, open_endo->second, e.what());
    }
    open_endo.reset();
    endo_images.clear();
  }

  void feed(const Line& l) {
    last_line = l.number;
    const std::string_view kw = l.keyword;
    if (kw == "group") {
      if (l.rest.empty()) fail(source, l.number, "`group` needs a name");
      close_endo();
      p.name = std::string(l.rest);
      have_group = true;
    } else if (kw == "gens") {
      close_endo();
      if (have_gens) fail(source, l.number, "duplicate `gens` line");
      std::istringstream in{std::string(l.rest)};
      for (std::string g; in >> g;) {
        if (!is_generator_name(g)) fail(source, l.number, fmt::format("bad generator name '{}'", g));
        p.generators.push_back(g);
      }
      if (p.generators.empty()) fail(source, l.number, "`gens` lists no generators");
      have_gens = true;
    } else if (kw == "rel") {
      close_endo();
      p.relators.push_back(word(l, l.rest));
    } else if (kw == "endo") {
      close_endo();
      if (l.rest.empty()) fail(source, l.number, "`endo` needs a name");
      open_endo = {std::string(l.rest), l.number};
    } else if (allow_split && kw == "hnn") {
      close_endo();
      std::istringstream in{std::string(l.rest)};
      std::string what, k;
      if (!(in >> what >> k) || what != "stable") fail(source, l.number, "expected `hnn stable <k>`");
      stable = k;
    } else if (allow_split && kw == "edge") {
      close_endo();
      const auto [a, b] = split_arrow(source, l, l.rest);
      edges.emplace_back(word(l, a), word(l, b));
    } else if (allow_split && kw == "surface") {
      close_endo();
      std::istringstream in{std::string(l.rest)};
      std::string id, embed, gen;
      if (!(in >> id >> embed >> gen) || embed != "embed") fail(source, l.number, "expected `surface <ID> embed <g> -> <word>`");
      SurfaceId sid{};
      try {
        sid = parse_surface_id(id);
      } catch (const Error& e) {
        fail(source, l.number, e.what());
      }
      if (surface && *surface != sid) fail(source, l.number, "mixed surface ids");
      surface = sid;
      const auto [lhs, rhs] = split_arrow(source, l, l.rest);
      (void)lhs;
      surface_words.emplace_back(gen, word(l, rhs));
    } else if (open_endo && l.rest.starts_with("->")) {
      const std::string_view g = l.keyword;
      const std::string_view img = trim(l.rest.substr(2));
      if (!p.has_generator(g)) fail(source, l.number, fmt::format("'{}' is not a generator", g));
      endo_images[std::string(g)] = word(l, img);
    } else {
      fail(source, l.number, fmt::format("unexpected '{}'", kw));
    }
  }

  void finish() {
    close_endo();
    if (!have_group) fail(source, last_line + 1, "missing `group` line");
    if (!have_gens) fail(source, last_line + 1, "missing `gens` line");
    p.validate();
  }
};

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PresentationFile parse_presentation(std::string_view text, const std::string& source) {
  Parser parser;
  parser.source = source;
  for (const auto& l : split_lines(text)) parser.feed(l);
  parser.finish();
  return {std::move(parser.p), std::move(parser.endos)};
}

PresentationFile load_presentation(const std::filesystem::path& path) {
  return parse_presentation(read_text_file(path), path.string());
}

HnnSplitting parse_split(std::string_view text, const std::string& source) {
  Parser parser;
  parser.source = source;
  parser.allow_split = true;
  for (const auto& l : split_lines(text)) parser.feed(l);
  parser.finish();
  if (parser.stable.empty()) fail(source, parser.last_line + 1, "missing `hnn stable` line");
  if (!parser.surface) fail(source, parser.last_line + 1, "missing `surface` lines");
  HnnSplitting h;
  h.group = std::move(parser.p);
  h.stable = parser.stable;
  h.edges = std::move(parser.edges);
  h.surface = *parser.surface;
  for (auto& [g, w] : parser.surface_words) h.surface_words[g] = std::move(w);
  h.validate();
  return h;
}

HnnSplitting load_split(const std::filesystem::path& path) { return parse_split(read_text_file(path), path.string()); }

Representation parse_rep(std::string_view json_text, const Presentation& group, double relator_tol,
                         const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: {}", source, e.what()));
  }
  auto bad = [&](const std::string& msg) -> Error {
    return Error(ErrorKind::ParseError, fmt::format("{}: {}", source, msg));
  };
  if (!j.is_object() || !j.contains("group") || !j.contains("images")) throw bad("expected keys 'group' and 'images'");
  if (!j["group"].is_string()) throw bad("'group' must be a string");
  if (j["group"].get<std::string>() != group.name)
    throw Error(ErrorKind::InvariantViolation,
                fmt::format("{}: representation is for group '{}', not '{}'", source, j["group"].get<std::string>(),
                            group.name));
  Representation rep{group, {}, RepMode::SL2};
  if (j.contains("mode")) {
    const auto m = j["mode"].is_string() ? j["mode"].get<std::string>() : std::string();
    if (m == "SL2") rep.mode = RepMode::SL2;
    else if (m == "PSL2") rep.mode = RepMode::PSL2;
    else throw bad("'mode' must be \"SL2\" or \"PSL2\"");
  }
  const auto& images = j["images"];
  if (!images.is_object()) throw bad("'images' must be an object");
  for (const auto& [g, v] : images.items())
    if (!group.has_generator(g)) throw bad(fmt::format("image for unknown generator '{}'", g));
  for (const auto& g : group.generators) {
    if (!images.contains(g)) throw bad(fmt::format("no image for generator '{}'", g));
    const auto& m = images[g];
    if (!m.is_array() || m.size() != 4) throw bad(fmt::format("image of '{}' needs 4 entries", g));
    std::array<cplx, 4> e;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& z = m[k];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw bad(fmt::format("entry {} of '{}' must be [re, im]", k, g));
      e[k] = {z[0].get<double>(), z[1].get<double>()};
    }
    const Mat2C mat = Mat2C::from_entries(e);
    if (std::abs(mat.det() - 1.0) > 1e-8 * std::max(1.0, mat.max_norm() * mat.max_norm()))
      throw Error(ErrorKind::InvariantViolation, fmt::format("{}: det of '{}' is not 1", source, g));
    rep.images[g] = mat;
  }
  require_relators(rep, relator_tol);
  return rep;
}

Representation load_rep(const std::filesystem::path& path, const Presentation& group, double relator_tol) {
  return parse_rep(read_text_file(path), group, relator_tol, path.string());
}

std::string rep_to_json(const Representation& rep) {
  nlohmann::ordered_json j;
  j["group"] = rep.presentation.name;
  j["mode"] = std::string(to_string(rep.mode));
  nlohmann::ordered_json images = nlohmann::ordered_json::object();
  for (const auto& g : rep.presentation.generators) {
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (const cplx z : rep.image(g).entries()) m.push_back({z.real(), z.imag()});
    images[g] = std::move(m);
  }
  j["images"] = std::move(images);
  return j.dump(2) + "\n";
}

}  // namespace charmut
