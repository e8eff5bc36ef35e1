// Univariate polynomials over a single field level, with factorization and
// the reciprocal-type involutions used by the class parameterizations.
#pragma once

#include "cgw/field.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cgw {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldSpec f) : field_(f) {}
  /// Coefficients low-to-high; trailing zeros are dropped.
  Poly(FieldSpec f, std::vector<FieldElement> coeffs);

  static Poly constant(FieldSpec f, const FieldElement& c);
  static Poly x(FieldSpec f);
  /// x - r
  static Poly linear(const FieldElement& r);

  FieldSpec field() const { return field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  FieldElement coeff(int i) const;
  FieldElement lead() const { return coeff(degree()); }
  FieldElement eval(const FieldElement& at) const;

  Poly monic() const;
  Poly derivative() const;
  /// Coefficientwise map (used for Frobenius twists and embeddings).
  template <class F>
  Poly map_coeffs(FieldSpec target, F&& fn) const {
    std::vector<FieldElement> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(fn(a));
    return Poly(target, std::move(c));
  }

  /// `<c0,c1,...,cn>@<fieldspec>`
  std::string to_string() const;
  static Poly parse(std::string_view text);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const FieldElement& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  FieldSpec field_;
  std::vector<FieldElement> coeffs_;
};

/// Degree first, then coefficients low-to-high under element_less.
bool poly_less(const Poly& a, const Poly& b);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd (zero only when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(Poly base, std::uint64_t e, const Poly& mod);

bool is_irreducible(const Poly& f);

struct Factor {
  Poly poly;
  int multiplicity = 0;
};

/// Monic irreducible factors with multiplicities, ordered by poly_less. The
/// equal-degree splitting stage draws from a generator seeded by a hash of f,
/// so the result is reproducible.
std::vector<Factor> factorize(const Poly& f);

/// All monic irreducible polynomials of the given degree, in poly_less order.
std::vector<Poly> monic_irreducibles(FieldSpec f, int degree);

/// f*(x) = f(0)^{-1} x^r f(1/x): roots are inverted.
Poly dual(const Poly& f);
/// f~(x) = sigma(f(0))^{-1} x^r sigma(f)(1/x) with sigma = x -> x^base_q.
Poly twisted_dual(const Poly& f, std::uint64_t base_q);
bool is_self_reciprocal(const Poly& f);
bool is_tilde_symmetric(const Poly& f, std::uint64_t base_q);

enum class MilnorType { Type1, Type2, Type3 };

struct MilnorClass {
  MilnorType type;
  /// For Type2, the irreducible g with f = g * g^*, g the poly_less-smaller of
  /// the pair.
  std::optional<Poly> g;
};

/// Self-reciprocal with no self-reciprocal factor other than 1 and itself.
bool is_star_irreducible(const Poly& f);
/// Throws std::invalid_argument unless f is *-irreducible.
MilnorClass milnor_type(const Poly& f);

std::string to_string(MilnorType t);

Poly embed(const Poly& f, FieldSpec target);

}  // namespace cgw
