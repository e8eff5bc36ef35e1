#include "cgw/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cgw {

Matrix zeros(FieldSpec f, int rows, int cols) {
  return Matrix::Constant(rows, cols, FieldElement::zero(f));
}

Matrix identity(FieldSpec f, int n) {
  Matrix m = zeros(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = FieldElement::one(f);
  return m;
}

Matrix scalar_matrix(const FieldElement& c, int n) {
  Matrix m = zeros(c.field(), n, n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = FieldElement::from_int(f, rows[i][j]);
  }
  return m;
}

Matrix bind(const Matrix& m, FieldSpec f) { return m.unaryExpr([f](const FieldElement& x) { return x.in(f); }); }

FieldSpec field_of(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.data()[i].bound()) return m.data()[i].field();
  throw FieldError("matrix has no bound entry");
}

bool is_identity(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i == j ? !m(i, j).is_one() : !m(i, j).is_zero()) return false;
  return true;
}

bool is_zero(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

bool equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto ra = element_rank(a(i, j));
      const auto rb = element_rank(b(i, j));
      if (ra != rb) return ra < rb;
    }
  return false;
}

std::vector<std::uint32_t> entry_key(const Matrix& m) {
  std::vector<std::uint32_t> k;
  k.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) k.push_back(m(i, j).index());
  return k;
}

Echelon row_reduce(const Matrix& m) {
  Echelon e{m.size() ? bind(m, field_of(m)) : m, {}};
  Matrix& a = e.rref;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(r).swap(a.row(piv));
    const FieldElement inv = a(r, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const FieldElement f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    e.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return e;
}

int rank(const Matrix& m) { return static_cast<int>(row_reduce(m).pivots.size()); }

FieldElement det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  const FieldSpec f = field_of(m);
  Matrix a = bind(m, f);
  const Eigen::Index n = a.rows();
  FieldElement d = FieldElement::one(f);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return FieldElement::zero(f);
    if (piv != c) {
      a.row(c).swap(a.row(piv));
      d = -d;
    }
    d *= a(c, c);
    const FieldElement inv = a(c, c).inverse();
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const FieldElement fct = a(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= fct * a(c, j);
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const FieldSpec f = field_of(m);
  const Eigen::Index n = m.rows();
  Matrix aug(n, 2 * n);
  aug << bind(m, f), identity(f, static_cast<int>(n));
  Echelon e = row_reduce(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return Matrix(e.rref.rightCols(n));
}

Matrix nullspace(const Matrix& m) {
  const FieldSpec f = field_of(m);
  Echelon e = row_reduce(bind(m, f));
  const int cols = static_cast<int>(m.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis = zeros(f, static_cast<int>(free_cols.size()), cols);
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    const int fc = free_cols[b];
    basis(b, fc) = FieldElement::one(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(b, e.pivots[r]) = -e.rref(r, fc);
  }
  if (basis.rows() == 0) return basis;
  return row_reduce(basis).rref;
}

Matrix power(const Matrix& m, std::int64_t e) {
  const FieldSpec f = field_of(m);
  Matrix base = bind(m, f);
  if (e < 0) {
    auto inv = inverse(base);
    if (!inv) throw std::domain_error("negative power of a singular matrix");
    base = *inv;
    e = -e;
  }
  Matrix r = identity(f, static_cast<int>(m.rows()));
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Matrix transpose(const Matrix& m) { return m.transpose(); }

Matrix conj_transpose(const Matrix& m, std::uint64_t base_q) {
  return m.transpose().unaryExpr([base_q](const FieldElement& x) { return unitary_sigma(x, base_q); });
}

Matrix frobenius(const Matrix& m, int e) {
  return m.unaryExpr([e](const FieldElement& x) { return frobenius(x, e); });
}

Matrix embed(const Matrix& m, FieldSpec target) {
  return m.unaryExpr([target](const FieldElement& x) { return embed(x, target); });
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag of nothing");
  const FieldSpec f = field_of(blocks.front());
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix m = zeros(f, static_cast<int>(r), static_cast<int>(c));
  Eigen::Index i = 0, j = 0;
  for (const auto& b : blocks) {
    m.block(i, j, b.rows(), b.cols()) = bind(b, f);
    i += b.rows();
    j += b.cols();
  }
  return m;
}

Matrix antidiag(FieldSpec f, int l) {
  Matrix m = zeros(f, l, l);
  for (int i = 0; i < l; ++i) m(i, l - 1 - i) = FieldElement::one(f);
  return m;
}

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::HermAntidiag:
      return "herm-antidiag";
    case FormKind::HermIdentity:
      return "herm-identity";
    case FormKind::Symplectic:
      return "sp-standard";
    case FormKind::OrthOdd:
      return "o-odd-standard";
    case FormKind::OrthEven:
      return "o-even-standard";
    case FormKind::OrthO5Variant:
      return "o5-block-variant";
    case FormKind::OrthO4Variant:
      return "o4-block-variant";
  }
  return "?";
}

FormKind parse_form_kind(std::string_view s) {
  for (FormKind k : {FormKind::HermAntidiag, FormKind::HermIdentity, FormKind::Symplectic, FormKind::OrthOdd,
                     FormKind::OrthEven, FormKind::OrthO5Variant, FormKind::OrthO4Variant})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown form preset: " + std::string(s));
}

Matrix form_matrix(FormKind kind, int n, FieldSpec f, std::optional<FieldElement> alpha) {
  if (n < 1) throw std::invalid_argument("form size must be positive");
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(to_string(kind) + ": " + what + ", got n = " + std::to_string(n));
  };
  const FieldElement one = FieldElement::one(f);
  switch (kind) {
    case FormKind::HermAntidiag:
      return antidiag(f, n);
    case FormKind::HermIdentity:
      return identity(f, n);
    case FormKind::Symplectic: {
      need(n % 2 == 0, "n must be even");
      const int m = n / 2;
      Matrix j = zeros(f, n, n);
      j.topRightCorner(m, m) = antidiag(f, m);
      j.bottomLeftCorner(m, m) = -antidiag(f, m);
      return j;
    }
    case FormKind::OrthOdd: {
      need(n % 2 == 1, "n must be odd");
      const FieldElement a = alpha ? alpha->in(f) : one;
      if (a.is_zero()) throw std::invalid_argument("o-odd-standard: alpha must be nonzero");
      const int m = n / 2;
      Matrix j = zeros(f, n, n);
      j.topRightCorner(m, m) = antidiag(f, m);
      j.bottomLeftCorner(m, m) = antidiag(f, m);
      j(m, m) = a;
      return j;
    }
    case FormKind::OrthEven:
      need(n % 2 == 0, "n must be even");
      return antidiag(f, n);
    case FormKind::OrthO5Variant: {
      need(n == 5, "n must be 5");
      Matrix j = zeros(f, 5, 5);
      j.topRightCorner(2, 2) = identity(f, 2);
      j.bottomLeftCorner(2, 2) = identity(f, 2);
      j(2, 2) = one;
      return j;
    }
    case FormKind::OrthO4Variant: {
      need(n == 4, "n must be 4");
      Matrix j = zeros(f, 4, 4);
      j.topRightCorner(2, 2) = identity(f, 2);
      j.bottomLeftCorner(2, 2) = identity(f, 2);
      return j;
    }
  }
  throw std::invalid_argument("unknown form kind");
}

std::vector<Poly> invariant_factors(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invariant factors of a non-square matrix");
  const FieldSpec f = field_of(m);
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n, Poly(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a[i][j] = Poly::constant(f, -m(i, j).in(f));
      if (i == j) a[i][j] = a[i][j] + Poly::x(f);
    }

  auto row_axpy = [&](int dst, int src, const Poly& q) {  // row_dst -= q row_src
    for (int j = 0; j < n; ++j) a[dst][j] = a[dst][j] - q * a[src][j];
  };
  auto col_axpy = [&](int dst, int src, const Poly& q) {
    for (int i = 0; i < n; ++i) a[i][dst] = a[i][dst] - q * a[i][src];
  };

  std::vector<Poly> out;
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (!a[i][j].is_zero() && (bi < 0 || a[i][j].degree() < a[bi][bj].degree())) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      std::swap(a[t], a[bi]);
      for (int i = 0; i < n; ++i) std::swap(a[i][t], a[i][bj]);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (a[i][t].is_zero()) continue;
        row_axpy(i, t, a[i][t] / a[t][t]);
        if (!a[i][t].is_zero()) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (a[t][j].is_zero()) continue;
        col_axpy(j, t, a[t][j] / a[t][t]);
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!(a[i][j] % a[t][t]).is_zero()) {
            for (int c = 0; c < n; ++c) a[t][c] = a[t][c] + a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(a[t][t].monic());
  }
  return out;
}

ClassFunction elementary_divisors(const Matrix& m) {
  const FieldSpec f = field_of(m);
  if (det(m).is_zero()) throw std::domain_error("elementary_divisors: singular matrix");
  ClassFunction c;
  c.kind = GroupKind::GL;
  c.n = static_cast<int>(m.rows());
  c.field = f;
  std::map<Poly, std::vector<int>, PolyLess> exps;
  for (const Poly& d : invariant_factors(m)) {
    if (d.degree() < 1) continue;
    for (const auto& [g, e] : factorize(d)) exps[g].push_back(e);
  }
  for (auto& [g, v] : exps) c.entries[g] = Partition(v);
  return c;
}

namespace {

// Stacks the Sylvester systems M X_i - Y_i M = 0 in the row-major unknowns
// of M.
Matrix sylvester_system(const std::vector<std::pair<Matrix, Matrix>>& pairs, FieldSpec f, int n) {
  Matrix a = zeros(f, static_cast<int>(pairs.size()) * n * n, n * n);
  int row = 0;
  for (const auto& [x, y] : pairs) {
    if (x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n)
      throw std::invalid_argument("intertwiner: size mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j, ++row)
        for (int k = 0; k < n; ++k) {
          a(row, i * n + k) += x(k, j).in(f);
          a(row, k * n + j) -= y(i, k).in(f);
        }
  }
  return a;
}

}  // namespace

std::vector<Matrix> simultaneous_intertwiner(const std::vector<std::pair<Matrix, Matrix>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("simultaneous_intertwiner: no pairs");
  const FieldSpec f = field_of(pairs.front().first);
  const int n = static_cast<int>(pairs.front().first.rows());
  Matrix basis = nullspace(sylvester_system(pairs, f, n));
  std::vector<Matrix> out;
  for (Eigen::Index b = 0; b < basis.rows(); ++b) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = basis(b, i * n + j);
    out.push_back(m);
  }
  return out;
}

std::vector<Matrix> intertwiner_space(const Matrix& x, const Matrix& y) { return simultaneous_intertwiner({{x, y}}); }

Matrix combine(const std::vector<Matrix>& basis, const std::vector<FieldElement>& coeffs) {
  if (basis.empty() || basis.size() != coeffs.size()) throw std::invalid_argument("combine: size mismatch");
  const FieldSpec f = field_of(basis.front());
  Matrix m = zeros(f, static_cast<int>(basis.front().rows()), static_cast<int>(basis.front().cols()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) m += coeffs[i].in(f) * basis[i];
  return m;
}

namespace {

// Sparse multivariate polynomial: exponent vector -> coefficient.
using Mono = std::vector<std::uint8_t>;
using MPoly = std::map<Mono, FieldElement>;

void add_into(MPoly& acc, const Mono& mono, const FieldElement& c) {
  auto [it, inserted] = acc.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

}  // namespace

bool generic_determinant_vanishes(const std::vector<Matrix>& basis) {
  if (basis.empty()) return true;
  const FieldSpec f = field_of(basis.front());
  const int n = static_cast<int>(basis.front().rows());
  const int d = static_cast<int>(basis.size());
  // Entry (i,j) as a linear form: list of (variable, coefficient).
  std::vector<std::vector<std::vector<std::pair<int, FieldElement>>>> lin(
      n, std::vector<std::vector<std::pair<int, FieldElement>>>(n));
  for (int u = 0; u < d; ++u)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!basis[u](i, j).is_zero()) lin[i][j].push_back({u, basis[u](i, j).in(f)});

  // Expansion along rows: D[S] is the signed sum over injections of rows
  // 0..|S|-1 onto column set S.
  std::vector<MPoly> dp(std::size_t{1} << n);
  dp[0][Mono(d, 0)] = FieldElement::one(f);
  const FieldElement minus = FieldElement::from_int(f, -1);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (dp[s].empty()) continue;
    const int row = __builtin_popcount(s);
    if (row == n) continue;
    for (int j = 0; j < n; ++j) {
      if (s & (1u << j)) continue;
      if (lin[row][j].empty()) continue;
      const int above = __builtin_popcount(s >> (j + 1));
      const FieldElement sign = above % 2 ? minus : FieldElement::one(f);
      MPoly& target = dp[s | (1u << j)];
      for (const auto& [mono, c] : dp[s])
        for (const auto& [var, lc] : lin[row][j]) {
          Mono m2 = mono;
          ++m2[var];
          add_into(target, m2, sign * c * lc);
        }
    }
    if (row > 0) dp[s].clear();
  }
  return dp[(1u << n) - 1].empty();
}

std::string to_text(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << ' ' << field_of(m).to_string() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).to_string();
    os << '\n';
  }
  return os.str();
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream is{std::string(text)};
  int rows = 0, cols = 0;
  std::string spec;
  if (!(is >> rows >> cols >> spec) || rows < 1 || cols < 1) throw std::invalid_argument("matrix header malformed");
  const FieldSpec f = FieldSpec::parse(spec);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("matrix body too short");
      m(i, j) = FieldElement::parse(f, tok);
    }
  return m;
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
    rows.push_back(r);
  }
  return rows;
}

std::string to_compact_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ";" : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).to_string();
  }
  os << ']';
  return os.str();
}

}  // namespace cgw
