// Dense exact matrices over F_{p^k}, built on Eigen with FieldElement as the
// scalar. Eigen supplies storage, blocks and products; everything that needs
// division or pivoting lives here as exact free functions.
#pragma once

#include "cgw/class_data.hpp"
#include "cgw/field.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cgw {

using Matrix = Eigen::Matrix<FieldElement, Eigen::Dynamic, Eigen::Dynamic>;

Matrix zeros(FieldSpec f, int rows, int cols);
Matrix identity(FieldSpec f, int n);
/// Scalar matrix c * I.
Matrix scalar_matrix(const FieldElement& c, int n);
/// Integer entries reduced into f (test and preset convenience).
Matrix from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows);
/// Attaches every literal entry to f.
Matrix bind(const Matrix& m, FieldSpec f);
/// The field of the first bound entry; throws if every entry is a literal.
FieldSpec field_of(const Matrix& m);

bool is_identity(const Matrix& m);
bool is_zero(const Matrix& m);
bool equal(const Matrix& a, const Matrix& b);
/// Row-major comparison under element_less.
bool lex_less(const Matrix& a, const Matrix& b);
/// Row-major element indices; a hashable key.
std::vector<std::uint32_t> entry_key(const Matrix& m);

struct Echelon {
  /// Reduced row echelon form.
  Matrix rref;
  /// Pivot column of each nonzero row, increasing.
  std::vector<int> pivots;
};

/// Gauss-Jordan elimination; the pivot in each column is the topmost
/// nonzero entry at or below the current row.
Echelon row_reduce(const Matrix& m);
int rank(const Matrix& m);
FieldElement det(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// Rows form the reduced echelon basis of {v : m v = 0}.
Matrix nullspace(const Matrix& m);
Matrix power(const Matrix& m, std::int64_t e);

Matrix transpose(const Matrix& m);
/// Entrywise sigma = x -> x^base_q, then transpose.
Matrix conj_transpose(const Matrix& m, std::uint64_t base_q);
/// Entrywise x -> x^(p^e).
Matrix frobenius(const Matrix& m, int e);
Matrix embed(const Matrix& m, FieldSpec target);

/// Block diagonal matrix from square or rectangular blocks.
Matrix block_diag(const std::vector<Matrix>& blocks);
/// The l x l antidiagonal all-ones matrix.
Matrix antidiag(FieldSpec f, int l);

enum class FormKind {
  HermAntidiag,
  HermIdentity,
  Symplectic,
  OrthOdd,
  OrthEven,
  OrthO5Variant,
  OrthO4Variant,
};

std::string to_string(FormKind k);
FormKind parse_form_kind(std::string_view s);

/// The Gram matrix of the named form on F^n. alpha is the middle entry of
/// OrthOdd (default 1). Throws std::invalid_argument for incompatible n or
/// alpha = 0.
Matrix form_matrix(FormKind kind, int n, FieldSpec f, std::optional<FieldElement> alpha = std::nullopt);

/// GL class data of an invertible matrix: for every monic irreducible f
/// dividing the characteristic polynomial, the partition of exponents of f
/// among the invariant factors of xI - M.
ClassFunction elementary_divisors(const Matrix& m);

/// Invariant factors d_1 | d_2 | ... | d_n of xI - M (monic, units included).
std::vector<Poly> invariant_factors(const Matrix& m);

/// Basis of {M : M X = Y M}. Each basis matrix is a row of the reduced
/// echelon form of the solution space in row-major coordinates, so the
/// coefficient tuple order and the lex_less order of members agree.
std::vector<Matrix> intertwiner_space(const Matrix& x, const Matrix& y);
/// Basis of the intersection over all pairs, with the same conventions.
std::vector<Matrix> simultaneous_intertwiner(const std::vector<std::pair<Matrix, Matrix>>& pairs);
/// sum_i c_i B_i.
Matrix combine(const std::vector<Matrix>& basis, const std::vector<FieldElement>& coeffs);

/// True when det(sum_i y_i B_i) is the zero polynomial in y. Then no member
/// of the span is invertible over any extension field.
bool generic_determinant_vanishes(const std::vector<Matrix>& basis);

/// `rows cols <fieldspec>` then one line per row of serialized elements.
std::string to_text(const Matrix& m);
Matrix parse_matrix(std::string_view text);

/// Array of rows of element strings.
nlohmann::json to_json(const Matrix& m);
std::string to_compact_string(const Matrix& m);

}  // namespace cgw
