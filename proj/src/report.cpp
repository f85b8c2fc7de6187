#include "charmut/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#ifndef CHARMUT_VERSION
#define CHARMUT_VERSION "0.0.0"
#endif

namespace charmut {

std::string_view library_version() { return CHARMUT_VERSION; }

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Derived: return "DERIVED";
    case Provenance::Trivial: return "TRIVIAL";
  }
  return "DERIVED";
}

ReportCheck& Report::add(std::string name, bool pass, std::optional<double> residual, Provenance provenance,
                         std::string detail) {
  checks.push_back({std::move(name), pass, residual, provenance, std::move(detail)});
  return checks.back();
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = suite;
  j["header"] = {
      {"command", header.command},
      {"seed", header.seed},
      {"tolerances",
       {{"relator", header.tolerances.relator},
        {"character", header.tolerances.character},
        {"rank", header.tolerances.rank}}},
      {"version", header.version},
  };
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (c.residual && std::isfinite(*c.residual))
      e["residual"] = *c.residual;
    else
      e["residual"] = nullptr;
    e["provenance"] = std::string(to_string(c.provenance));
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["pass"] = all_pass();
  return j.dump(2) + "\n";
}

std::string Report::to_text(bool failures_only) const {
  std::string out;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.pass) ++passed;
    if (failures_only && c.pass) continue;
    out += fmt::format("[{}] {} ({})", c.pass ? "PASS" : "FAIL", c.name, to_string(c.provenance));
    if (c.residual) out += fmt::format(" residual={:.3e}", *c.residual);
    if (!c.detail.empty()) out += "  " + c.detail;
    out += '\n';
  }
  out += fmt::format("{}: {}/{} checks passed\n", suite, passed, checks.size());
  return out;
}

}  // namespace charmut
