// Shared result vocabulary for the conjugacy searches.
#pragma once

#include "cgw/matrix.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cgw {

enum class Status { Found, NotFound, Unknown };
std::string to_string(Status s);

struct SearchOptions {
  /// Membership tests (or solver nodes) allowed per decision.
  std::uint64_t budget = 10'000'000;
  /// Spaces with at most this many members are enumerated in lex order, so
  /// the first member found is the lex-smallest one.
  std::uint64_t lex_cap = 100'000;
  std::uint64_t seed = 0;
};

/// Budget and seed defaults from CGW_BUDGET / CGW_SEED when set.
SearchOptions default_search_options();

struct SearchResult {
  Status status = Status::Unknown;
  std::optional<Matrix> conjugator;
  /// How the answer was reached, e.g. "identity", "gl-invariants",
  /// "lex-enumeration", "form-solver", "sampling".
  std::string method;
  /// Dimension of the searched linear space (-1 when none was built).
  int dimension = -1;
  std::uint64_t work = 0;
  /// NotFound results are certificates only when exhaustive.
  bool exhaustive = false;
  std::string note;
};

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace cgw
