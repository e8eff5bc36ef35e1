// Partitions and class functions: the combinatorial data that labels
// conjugacy classes of GL, U, Sp and O.
#pragma once

#include "cgw/poly.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cgw {

struct Partition {
  /// Weakly decreasing, all positive.
  std::vector<int> parts;

  Partition() = default;
  /// Sorts and drops zeros.
  explicit Partition(std::vector<int> p);

  int size() const;
  bool empty() const { return parts.empty(); }
  /// Number of parts equal to v.
  int multiplicity(int v) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Partitions of n, largest-first lexicographic order.
std::vector<Partition> partitions_of(int n);

/// Odd parts occur with even multiplicity.
bool is_symplectic_partition(const Partition& p);
/// Even parts occur with even multiplicity.
bool is_orthogonal_partition(const Partition& p);

enum class GroupKind { GL, U, Sp, O };
std::string to_string(GroupKind k);
GroupKind parse_group_kind(std::string_view s);

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

/// A map from monic irreducible polynomials to partitions. `n` is the
/// declared size: the matrix size for GL, U and O, and half the matrix size
/// for Sp (the data of Sp(2n) sums to 2n).
struct ClassFunction {
  GroupKind kind = GroupKind::GL;
  int n = 0;
  FieldSpec field;
  /// F_q for U (the field is then F_{q^2}); unused otherwise.
  std::uint64_t base_q = 0;
  std::map<Poly, Partition, PolyLess> entries;

  /// Sum of |lambda_f| * deg f.
  int total() const;
  /// Matrix size the data must account for.
  int expected_total() const { return kind == GroupKind::Sp ? 2 * n : n; }
};

struct Validation {
  bool valid = true;
  /// Empty when valid.
  std::string violated;
};

/// Checks the parameterization conditions for c.kind. Throws
/// std::invalid_argument on a constant, non-monic or x key.
Validation validate_class_function(const ClassFunction& c);

/// Every valid class function of the given kind and size, keys drawn from
/// the monic irreducibles over `field` (over F_{q^2} for U). Throws
/// std::length_error once more than `budget` functions or candidate keys
/// would be produced.
std::vector<ClassFunction> enumerate_class_functions(GroupKind kind, int n, FieldSpec field,
                                                     std::uint64_t base_q = 0,
                                                     std::uint64_t budget = 1'000'000);

/// Re-keys c by eigenvalue over a splitting field: each key f is replaced by
/// x - r for every root r of f, carrying lambda_f.
ClassFunction closure_view(const ClassFunction& c);

/// True when f is x - 1 or x + 1.
bool is_unit_linear(const Poly& f);

nlohmann::json to_json(const ClassFunction& c);
ClassFunction class_function_from_json(const nlohmann::json& j);

}  // namespace cgw
