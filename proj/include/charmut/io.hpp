#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "charmut/mutation.hpp"
#include "charmut/rep.hpp"
#include "charmut/word.hpp"

namespace charmut {

/// A presentation plus the named endomorphisms declared in the same file.
struct PresentationFile {
  Presentation presentation;
  std::map<std::string, Endomorphism, std::less<>> endos;
};

/// Throws FileNotFound.
std::string read_text_file(const std::filesystem::path& path);

/// Line-oriented format:
///   group <name>
///   gens <g1> <g2> ...
///   rel <word>                 (one per relator)
///   endo <name>                (followed by lines `<g> -> <word>`)
/// Blank lines and text after `#` are ignored.  Errors are ParseError with
/// `<source>:<line>:` in the message.
PresentationFile parse_presentation(std::string_view text, const std::string& source = "<input>");
PresentationFile load_presentation(const std::filesystem::path& path);

/// Presentation format plus
///   hnn stable <k>
///   edge <a1-word> -> <a2-word>
///   surface <ID> embed <surface-gen> -> <word>
/// Edges are matched to surface generators in file order.
HnnSplitting parse_split(std::string_view text, const std::string& source = "<input>");
HnnSplitting load_split(const std::filesystem::path& path);

/// {"group": name, "mode": "SL2"|"PSL2", "images": {"g": [[re,im] x 4], ...}}.
/// The group name must match `group`, every generator needs an image of
/// determinant 1, and relators are checked against `relator_tol`.
Representation parse_rep(std::string_view json_text, const Presentation& group, double relator_tol = 1e-7,
                         const std::string& source = "<input>");
Representation load_rep(const std::filesystem::path& path, const Presentation& group, double relator_tol = 1e-7);
/// Images in generator order, full double precision.
std::string rep_to_json(const Representation& rep);

}  // namespace charmut
