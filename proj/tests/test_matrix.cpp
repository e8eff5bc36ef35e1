#include "cgw/matrix.hpp"

#include <doctest.h>

#include <numeric>

using namespace cgw;

namespace {

// Leibniz expansion.
FieldElement leibniz(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const FieldSpec f = field_of(m);
  FieldElement total = FieldElement::zero(f);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    FieldElement term = FieldElement::from_int(f, inversions % 2 ? -1 : 1);
    for (int i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Every 2x2 matrix over f, in row-major lex order.
std::vector<Matrix> all_2x2(FieldSpec f) {
  std::vector<Matrix> out;
  const auto els = all_elements(f);
  for (const auto& a : els)
    for (const auto& b : els)
      for (const auto& c : els)
        for (const auto& d : els) {
          Matrix m(2, 2);
          m << a, b, c, d;
          out.push_back(m);
        }
  return out;
}

Matrix random_matrix(FieldSpec f, int n, unsigned seed) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = element_at_rank(f, (seed * 2654435761u + i * 97 + j * 31) % f.q());
  return m;
}

}  // namespace

TEST_CASE("det agrees with the Leibniz formula") {
  const FieldSpec f = make_field(5, 2);
  for (unsigned s = 1; s < 40; ++s) {
    const Matrix m = random_matrix(f, 1 + s % 4, s);
    CHECK(det(m) == leibniz(m));
  }
}

TEST_CASE("inverse and rank") {
  const FieldSpec f = make_field(3, 2);
  for (unsigned s = 1; s < 30; ++s) {
    const Matrix m = random_matrix(f, 3, s);
    const auto inv = inverse(m);
    CHECK(inv.has_value() == !det(m).is_zero());
    if (inv) CHECK(is_identity(m * *inv));
    CHECK((rank(m) == 3) == inv.has_value());
  }
  CHECK(rank(zeros(f, 2, 3)) == 0);
}

TEST_CASE("nullspace is the kernel in reduced form") {
  const FieldSpec f = make_field(3, 1);
  const Matrix m = from_ints(f, {{1, 2, 0, 1}, {2, 1, 0, 2}, {0, 0, 1, 1}});
  const Matrix ns = nullspace(m);
  CHECK(ns.rows() == 4 - rank(m));
  for (int r = 0; r < ns.rows(); ++r) CHECK(is_zero(m * transpose(ns.row(r))));
  CHECK(equal(row_reduce(ns).rref, ns));
}

TEST_CASE("intertwiner of [[1,1],[0,1]] and [[1,t],[0,1]]") {
  const FieldSpec f = make_field(3, 2);
  const FieldElement t = FieldElement::generator(f);
  Matrix x = identity(f, 2), y = identity(f, 2);
  x(0, 1) = FieldElement::one(f);
  y(0, 1) = t;
  const auto basis = intertwiner_space(x, y);
  REQUIRE(basis.size() == 2);
  Matrix b0 = zeros(f, 2, 2), b1 = zeros(f, 2, 2);
  b0(0, 0) = FieldElement::one(f);
  b0(1, 1) = t.inverse();
  b1(0, 1) = FieldElement::one(f);
  CHECK(equal(basis[0], b0));
  CHECK(equal(basis[1], b1));
}

TEST_CASE("intertwiner space matches brute force over F_9") {
  const FieldSpec f = make_field(3, 2);
  const auto all = all_2x2(f);
  const std::vector<std::pair<int, int>> picks{{10, 10}, {100, 200}, {4000, 4100}, {37, 1234}};
  for (auto [i, j] : picks) {
    const Matrix& x = all[i];
    const Matrix& y = all[j];
    std::size_t count = 0;
    for (const auto& m : all) count += equal(m * x, y * m);
    const auto basis = intertwiner_space(x, y);
    std::size_t expect = 1;
    for (std::size_t d = 0; d < basis.size(); ++d) expect *= f.q();
    CHECK(count == expect);
    for (const auto& b : basis) CHECK(equal(b * x, y * b));
  }
}

TEST_CASE("lex order of coefficients matches lex order of members") {
  const FieldSpec f = make_field(3, 1);
  const Matrix x = from_ints(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
  const auto basis = intertwiner_space(x, x);
  std::vector<Matrix> members;
  const auto els = all_elements(f);
  std::vector<std::uint32_t> idx(basis.size(), 0);
  for (;;) {
    std::vector<FieldElement> c;
    for (auto i : idx) c.push_back(els[i]);
    members.push_back(combine(basis, c));
    int k = static_cast<int>(idx.size()) - 1;
    while (k >= 0 && ++idx[k] == f.q()) idx[k--] = 0;
    if (k < 0) break;
  }
  for (std::size_t i = 1; i < members.size(); ++i) CHECK(lex_less(members[i - 1], members[i]));
}

TEST_CASE("generic determinant") {
  const FieldSpec f = make_field(3, 2);
  Matrix n = zeros(f, 2, 2);
  n(0, 1) = FieldElement::one(f);
  CHECK(generic_determinant_vanishes({n}));
  CHECK_FALSE(generic_determinant_vanishes({identity(f, 2)}));
  // diag(y0, 0) + diag(0, y1): det y0 y1, nonzero as a polynomial
  Matrix e0 = zeros(f, 2, 2), e1 = zeros(f, 2, 2);
  e0(0, 0) = FieldElement::one(f);
  e1(1, 1) = FieldElement::one(f);
  CHECK_FALSE(generic_determinant_vanishes({e0, e1}));
  // every member singular at F_9 and F_81 when the polynomial vanishes
  Matrix e2 = zeros(f, 2, 2);
  e2(0, 1) = FieldElement::one(f);
  CHECK(generic_determinant_vanishes({e0, e2}));
  for (const FieldSpec g : {f, make_field(3, 4)})
    for (const auto& a : all_elements(g))
      for (const auto& b : all_elements(f)) CHECK(det(combine({embed(e0, g), embed(e2, g)}, {a, embed(b, g)})).is_zero());
}

TEST_CASE("elementary divisors of unipotents match rank sequences") {
  const FieldSpec f = make_field(3, 1);
  const Matrix u = from_ints(f, {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  const auto cf = elementary_divisors(u);
  REQUIRE(cf.entries.size() == 1);
  CHECK(cf.entries.begin()->second == Partition({3, 1}));
  // number of Jordan blocks = nullity of u - I
  CHECK(4 - rank(u - identity(f, 4)) == 2);
  const auto inv = invariant_factors(u);
  REQUIRE(inv.size() == 4);
  CHECK(inv[3].degree() == 3);
  CHECK(inv[2].degree() == 1);
}

TEST_CASE("elementary divisors are conjugation invariant") {
  const FieldSpec f = make_field(5, 1);
  const Matrix m = from_ints(f, {{2, 1, 0}, {0, 2, 0}, {0, 0, 3}});
  const Matrix p = from_ints(f, {{1, 2, 3}, {0, 1, 4}, {1, 0, 1}});
  REQUIRE(inverse(p));
  CHECK(elementary_divisors(p * m * *inverse(p)).entries == elementary_divisors(m).entries);
}

TEST_CASE("form presets have the right symmetry") {
  const FieldSpec f = make_field(3, 2);
  const Matrix sp = form_matrix(FormKind::Symplectic, 4, f);
  CHECK(equal(transpose(sp), -sp));
  const Matrix o5 = form_matrix(FormKind::OrthO5Variant, 5, f);
  CHECK(equal(transpose(o5), o5));
  const Matrix h = form_matrix(FormKind::HermAntidiag, 4, f);
  CHECK(equal(conj_transpose(h, 3), h));
  CHECK_THROWS(form_matrix(FormKind::Symplectic, 3, f));
  CHECK_THROWS(form_matrix(FormKind::OrthOdd, 3, f, FieldElement::zero(f)));
  CHECK(parse_form_kind(to_string(FormKind::OrthO4Variant)) == FormKind::OrthO4Variant);
}

TEST_CASE("text round trip") {
  const FieldSpec f = make_field(3, 2);
  const Matrix m = random_matrix(f, 3, 7);
  CHECK(equal(parse_matrix(to_text(m)), m));
  CHECK_THROWS(parse_matrix("2 2 p=3;k=2\n[1,0]"));
}
