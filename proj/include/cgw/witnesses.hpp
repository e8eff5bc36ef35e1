// Element-conjugate but not globally conjugate homomorphism pairs from
// finite abelian groups into classical groups: the base pairs, the lifts
// that enlarge them, and the two deciders that verify them.
#pragma once

#include "cgw/groups.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgw {

/// Z/m_1 + ... + Z/m_r.
struct AbelianSource {
  std::vector<std::uint64_t> moduli;

  std::uint64_t order() const;
  /// All tuples, first coordinate most significant.
  std::vector<std::vector<std::uint64_t>> elements() const;
};

std::string tuple_label(const std::vector<std::uint64_t>& h);

struct Hom {
  AbelianSource source;
  GroupSpec target;
  /// Image of the i-th generator.
  std::vector<Matrix> images;

  Matrix operator()(const std::vector<std::uint64_t>& h) const;
};

/// Images lie in the target, have the right orders and commute pairwise.
/// Throws std::invalid_argument naming the first failure.
void validate(const Hom& hom);

enum class ElementStatus { Verified, Fails, Inconclusive };
std::string to_string(ElementStatus s);

struct ElementResult {
  ElementStatus status = ElementStatus::Inconclusive;
  /// Source element label -> c with c phi1(h) c^-1 = phi2(h).
  std::map<std::string, Matrix> certificates;
  /// Where it stopped, for Fails and Inconclusive.
  std::optional<std::vector<std::uint64_t>> at;
  std::string method;
  std::uint64_t work = 0;
  std::string note;
};

enum class GlobalStatus { Found, Exhausted, Symbolic, Unknown };
std::string to_string(GlobalStatus s);

struct GlobalEvidence {
  /// "generic-determinant", "span-search" or "group-enumeration".
  std::string method;
  GlobalStatus outcome = GlobalStatus::Unknown;
  std::uint64_t work = 0;
  std::string note;
};

struct GlobalResult {
  GlobalStatus status = GlobalStatus::Unknown;
  /// Field level "p^k" the result is pinned to; symbolic results hold at
  /// every level.
  std::string level;
  std::optional<Matrix> conjugator;
  /// Dimension of the simultaneous intertwiner space.
  int dimension = -1;
  std::vector<GlobalEvidence> evidence;
  std::string note;
};

struct WitnessPair {
  Hom phi1;
  Hom phi2;
  std::vector<std::string> provenance;
  std::vector<std::string> notes;
  std::optional<ElementResult> element;
  std::optional<GlobalResult> global;
};

/// Both homs valid, same source and target.
void validate(const WitnessPair& w);

/// Runs is_conjugate_in_group on every source element. Stops at the first
/// non-conjugate element (Fails) or undecided one (Inconclusive).
ElementResult element_conjugate(const WitnessPair& w, const SearchOptions& opts);

/// Same question answered by scanning an explicit list of all group
/// elements; each certificate is the lex-smallest conjugator.
ElementResult element_conjugate_by_enumeration(const WitnessPair& w, const std::vector<Matrix>& group);

struct GlobalOptions {
  /// Also search the intertwiner space when the symbolic certificate holds.
  bool search_after_symbolic = true;
};

/// Simultaneous intertwiner over the generator pairs, then the
/// generic-determinant certificate and a membership search in the space.
GlobalResult globally_conjugate(const WitnessPair& w, const SearchOptions& opts, GlobalOptions gopts = {});

/// Scans all elements of the target for a global conjugator.
GlobalEvidence global_by_enumeration(const WitnessPair& w, const std::vector<Matrix>& group,
                                     std::optional<Matrix>* conjugator = nullptr);

/// Re-runs the global decider after one field extension: degree 2 in
/// general, degree 3 for U so that the involution still restricts to the
/// original one.
GlobalResult stability_check(const WitnessPair& w, const SearchOptions& opts);

/// The same group over a larger field containing g.field.
GroupSpec extend_group(const GroupSpec& g, FieldSpec larger);
WitnessPair extend_pair(const WitnessPair& w, FieldSpec larger);

/// Skip precondition checks; only for building negative controls.
struct Unchecked {};

WitnessPair witness_gl2(FieldSpec field, const FieldElement& a, const FieldElement& b);
WitnessPair witness_gl2(FieldSpec field, const FieldElement& a, const FieldElement& b, Unchecked);
WitnessPair witness_sp2(FieldSpec field, const FieldElement& a);
/// Images diag([[1,a],[0,1]], [[1,-sigma(a)],[0,1]]) in U(4) with the
/// antidiagonal hermitian form. Requires a not in F_p and a^{q+1} != 1.
WitnessPair witness_u4(FieldSpec field, std::uint64_t base_q, const FieldElement& a);
WitnessPair witness_u4(FieldSpec field, std::uint64_t base_q, const FieldElement& a, Unchecked);
/// O(5) with the o5-block-variant form, O(4) with o4-block-variant.
WitnessPair witness_o5(FieldSpec field, const FieldElement& a);
WitnessPair witness_o4(FieldSpec field, const FieldElement& a);

/// Adds `a` as a new generator on both sides and embeds the old images.
/// Checks that a lies in g, has finite order, that the embedding is
/// multiplicative on the generators, lands in g and centralizes a.
WitnessPair lift_via_centralizer(const WitnessPair& w, const Matrix& a,
                                 const std::function<Matrix(const Matrix&)>& embedding, const GroupSpec& g,
                                 const std::string& tag);

/// Scales every image A by the n-th root of det(A)^-1 so it lands in SL(n).
/// Requires gcd(n, q-1) = 1.
WitnessPair sl_witness_via_det_twist(const WitnessPair& gl_pair);

/// Conjugates both homs by P and re-targets them to `to`.
WitnessPair transport(const WitnessPair& w, const Matrix& p, const GroupSpec& to, const std::string& tag);

class UnsupportedWitness : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct WitnessParams {
  std::optional<FieldElement> a;
  std::optional<FieldElement> b;
  /// U only; defaults to sqrt(|field|).
  std::uint64_t base_q = 0;
};

/// Base pair plus lifts for (family, n). n is the matrix size. Throws
/// UnsupportedWitness outside GL n>=2, SL n>=2, U n>=4, Sp even n>=2,
/// O odd n>=5, O even n>=4.
WitnessPair construct_witness(Family family, int n, FieldSpec field, const WitnessParams& params = {});

/// Defaults: b = the field generator t, the sp2 / SL(2) parameter is the
/// first nonzero square outside F_p, the U parameter the first element
/// outside F_p with a^{q+1} != 1, otherwise t.
FieldElement default_parameter(Family family, FieldSpec field, std::uint64_t base_q = 0);

std::string level_string(FieldSpec f);

nlohmann::json to_json(const WitnessPair& w);
nlohmann::json to_json(const ElementResult& r);
nlohmann::json to_json(const GlobalResult& r);

}  // namespace cgw
