#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charmut/rep.hpp"

namespace charmut {

std::string_view library_version();

/// Where the expected value of a check comes from.
enum class Provenance { Paper, Derived, Trivial };

std::string_view to_string(Provenance p);

struct ReportCheck {
  std::string name;
  bool pass = false;
  /// Absent when the check is exact or structural.
  std::optional<double> residual;
  Provenance provenance = Provenance::Derived;
  std::string detail;
};

struct ReportHeader {
  std::string command;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::string version = std::string(library_version());
};

struct Report {
  std::string suite;
  ReportHeader header;
  std::vector<ReportCheck> checks;

  ReportCheck& add(std::string name, bool pass, std::optional<double> residual, Provenance provenance,
                   std::string detail = {});
  bool all_pass() const;
  /// 0 when every check passes, 2 otherwise.
  int exit_code() const { return all_pass() ? 0 : 2; }

  /// Stable key order and number formatting; identical inputs give identical bytes.
  std::string to_json() const;
  /// One line per check, plus a summary line.
  std::string to_text(bool failures_only = false) const;
};

}  // namespace charmut
