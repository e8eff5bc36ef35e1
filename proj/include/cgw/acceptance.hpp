// The acceptance suite: one verdict per primary criterion, shared by the
// acceptance test binary and `cgw selftest`.
#pragma once

#include "cgw/search.hpp"

#include <string>
#include <vector>

namespace cgw {

enum class Verdict { Pass, Fail, Skipped, Info };
std::string to_string(Verdict v);

struct CriterionResult {
  std::string id;
  std::string title;
  Verdict verdict = Verdict::Fail;
  std::string detail;
  double seconds = 0;
  /// Informational lines are printed but never counted.
  bool primary = true;
};

struct AcceptanceConfig {
  SearchOptions opts;
  /// Fault injection: perturb every form matrix before membership checks.
  bool corrupt_forms = false;
  /// Run only criteria whose id contains this string.
  std::string filter;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

/// One line per result.
std::string format_line(const CriterionResult& r);

/// True when no primary criterion failed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cgw
