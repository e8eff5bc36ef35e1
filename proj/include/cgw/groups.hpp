// The classical groups as explicit matrix groups: membership, generation by
// closure, centralizers, conjugacy inside the group and form transport.
#pragma once

#include "cgw/matrix.hpp"
#include "cgw/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cgw {

enum class Family { GL, SL, U, Sp, Oodd, Oeven };
std::string to_string(Family f);
Family parse_family(std::string_view s);
bool has_form(Family f);

struct GroupSpec {
  Family family = Family::GL;
  int n = 0;
  FieldSpec field;
  /// q with field = F_{q^2}; U only.
  std::uint64_t base_q = 0;
  /// Gram matrix; absent for GL and SL.
  std::optional<Matrix> form;
  /// Preset name, or "inline".
  std::string form_name;

  /// e.g. "Sp(4, F_9)".
  std::string label() const;
};

/// Group with its default preset form: sp-standard, herm-antidiag,
/// o-odd-standard(1), o-even-standard.
GroupSpec make_group(Family family, int n, FieldSpec field, std::uint64_t base_q = 0);
GroupSpec make_group(Family family, int n, FieldSpec field, FormKind preset,
                     std::optional<FieldElement> alpha = std::nullopt, std::uint64_t base_q = 0);
GroupSpec make_group_with_form(Family family, FieldSpec field, const Matrix& form, std::uint64_t base_q = 0,
                               std::string name = "inline");

/// Checks the GroupSpec invariants; throws std::invalid_argument.
void validate(const GroupSpec& g);

nlohmann::json to_json(const GroupSpec& g);
/// Accepts `form` as a preset name, `o-odd-standard(<alpha>)`, or an inline
/// array of rows of element strings.
GroupSpec group_from_json(const nlohmann::json& j);

struct Membership {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

Membership membership(const GroupSpec& g, const Matrix& m);

/// t(A) (or t(sigma(A)) for U).
Matrix form_adjoint_transpose(const GroupSpec& g, const Matrix& m);

/// Order from the standard formulas; nullopt on overflow.
std::optional<std::uint64_t> group_order(const GroupSpec& g);

/// Generators whose closure is the whole group, drawn deterministically
/// from `seed` where randomness is used.
std::vector<Matrix> standard_generators(const GroupSpec& g, std::uint64_t seed, int extra = 0);

/// All elements in lex_less order. Throws BudgetExceeded when the predicted
/// order exceeds the budget, std::logic_error if closure misses the order.
std::vector<Matrix> generate(const GroupSpec& g, std::uint64_t budget, std::uint64_t seed = 0);

struct ClassPartition {
  /// Lex-smallest element of each class, classes ordered by representative.
  std::vector<Matrix> representatives;
  std::vector<std::uint64_t> sizes;
};

/// Conjugacy classes of a fully generated group, by orbits under
/// conjugation by the generators.
ClassPartition conjugacy_classes(const GroupSpec& g, std::uint64_t budget, std::uint64_t seed = 0);

struct CentralizerSpace {
  /// Basis of {M : M a = a M}.
  std::vector<Matrix> basis;
  /// For diagonal a: coordinate sets sharing an eigenvalue, in first
  /// appearance order.
  std::vector<std::vector<int>> eigen_blocks;
  /// Human-readable shape such as "diag(A_2, A_1) in GL".
  std::string shape;
};

CentralizerSpace centralizer_space(const GroupSpec& g, const Matrix& a);

/// Searches span(basis) for a member of g. Lex-smallest when the span has at
/// most opts.lex_cap elements; otherwise the form solver (U, Sp, O) or
/// seeded sampling (GL, SL).
SearchResult find_member_in_span(const GroupSpec& g, const std::vector<Matrix>& basis, const SearchOptions& opts);

/// Is there c in g with c X c^-1 = Y? GL and SL decide by elementary
/// divisors first; U uses them to decide and then looks for a unitary
/// conjugator; Sp and O search only.
SearchResult is_conjugate_in_group(const GroupSpec& g, const Matrix& x, const Matrix& y, const SearchOptions& opts);

/// P with t(sigma(P)) J_to P = J_from, so that A -> P A P^-1 maps the group
/// of `from` onto the group of `to`. Orthogonal groups in odd dimension may
/// rescale the source form. Throws std::invalid_argument when the forms are
/// not equivalent.
Matrix transport_matrix(const GroupSpec& from, const GroupSpec& to);

}  // namespace cgw
