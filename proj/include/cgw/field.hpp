// Exact arithmetic in finite fields F_{p^k} of odd characteristic.
//
// Fields are interned: make_field(p, k) always returns a handle to the same
// immutable table set, so handle equality is field equality. Elements are
// stored as an index into that table set (base-p digits of the power-basis
// coordinates, c0 least significant) plus the field pointer.
//
// An element with no field attached is an integer literal. Literals exist so
// that Eigen can build Scalar(0) and Scalar(1) internally; they coerce into
// the field of the other operand on first contact.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgw {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct FieldData;
}

/// Handle to an interned finite field F_{p^k}.
class FieldSpec {
 public:
  FieldSpec() = default;

  bool valid() const { return data_ != nullptr; }
  std::uint32_t p() const;
  int k() const;
  /// Number of elements p^k.
  std::uint32_t q() const;
  /// Defining polynomial, coefficients low-to-high, monic of degree k.
  const std::vector<std::uint32_t>& modulus() const;

  /// `p=<p>;k=<k>;mod=<c0,...,ck>`
  std::string to_string() const;
  static FieldSpec parse(std::string_view text);

  const detail::FieldData* data() const { return data_; }

  friend bool operator==(FieldSpec a, FieldSpec b) { return a.data_ == b.data_; }
  friend bool operator!=(FieldSpec a, FieldSpec b) { return a.data_ != b.data_; }

 private:
  explicit FieldSpec(const detail::FieldData* d) : data_(d) {}
  const detail::FieldData* data_ = nullptr;

  friend FieldSpec make_field(std::uint32_t p, int k);
  friend class FieldElement;
};

/// F_{p^k} with modulus the lexicographically smallest monic irreducible of
/// degree k (coefficients compared c0 first). k = 1 uses the modulus x.
FieldSpec make_field(std::uint32_t p, int k);

bool is_prime(std::uint64_t n);

class FieldElement {
 public:
  FieldElement() = default;
  // Implicit on purpose: Eigen writes Scalar(0), Scalar(1) and mixes them in.
  FieldElement(int literal) : raw_(literal) {}  // NOLINT(google-explicit-constructor)
  FieldElement(FieldSpec field, std::uint32_t index);

  static FieldElement zero(FieldSpec f) { return {f, 0}; }
  static FieldElement one(FieldSpec f) { return {f, 1}; }
  /// Residue n mod p in the prime subfield.
  static FieldElement from_int(FieldSpec f, std::int64_t n);
  /// Power-basis coordinates c0..c_{k-1}, each reduced mod p.
  static FieldElement from_coeffs(FieldSpec f, const std::vector<std::int64_t>& coeffs);
  /// The class of x in F_p[x]/(modulus).
  static FieldElement generator(FieldSpec f);
  /// A fixed generator of the multiplicative group.
  static FieldElement primitive(FieldSpec f);
  /// `[c0,...,c_{k-1}]`
  static FieldElement parse(FieldSpec f, std::string_view text);

  bool bound() const { return field_ != nullptr; }
  FieldSpec field() const;
  /// Index in the field table; requires a bound element.
  std::uint32_t index() const;
  /// Literal value; requires an unbound element.
  std::int64_t literal() const { return raw_; }
  /// Same value, attached to f (checks the field when already bound).
  FieldElement in(FieldSpec f) const;

  bool is_zero() const;
  bool is_one() const;
  bool in_prime_field() const;
  std::vector<std::uint32_t> coeffs() const;

  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;
  /// Discrete log base the primitive element; requires nonzero.
  std::uint32_t log() const;
  /// Multiplicative order; requires nonzero.
  std::uint64_t order() const;

  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  const detail::FieldData* field_ = nullptr;
  std::int64_t raw_ = 0;
};

/// Total order on elements of one field: lexicographic on (c0, c1, ...).
bool element_less(const FieldElement& a, const FieldElement& b);
/// Position of x in that order, 0 .. q-1.
std::uint32_t element_rank(const FieldElement& x);
/// Inverse of element_rank.
FieldElement element_at_rank(FieldSpec f, std::uint32_t rank);

/// x^(p^e).
FieldElement frobenius(const FieldElement& x, int e);

/// x^q on F_{q^2}, the involution fixing F_q. The field must be F_{q^2}
/// exactly, i.e. base_q = p^m and k = 2m.
FieldElement unitary_sigma(const FieldElement& x, std::uint64_t base_q);
/// Throws unless f is F_{base_q^2}.
void check_unitary_level(FieldSpec f, std::uint64_t base_q);

/// Image under the fixed embedding F_{p^a} -> F_{p^b}, a | b. The family of
/// embeddings is compatible: embedding through an intermediate field agrees
/// with embedding directly.
FieldElement embed(const FieldElement& x, FieldSpec target);

bool is_square(const FieldElement& x);
/// Square root, choosing the smaller of +-s under element_less.
FieldElement sqrt(const FieldElement& x);

/// The y with y^n = x, when x -> x^n is a bijection of the field.
FieldElement power_map_inverse(const FieldElement& x, std::int64_t n);

/// All elements of f in element_less order.
std::vector<FieldElement> all_elements(FieldSpec f);

}  // namespace cgw

namespace Eigen {

template <>
struct NumTraits<cgw::FieldElement> : GenericNumTraits<cgw::FieldElement> {
  using Real = cgw::FieldElement;
  using NonInteger = cgw::FieldElement;
  using Literal = cgw::FieldElement;
  using Nested = cgw::FieldElement;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
