#include "cgw/groups.hpp"

#include <doctest.h>

#include <set>

using namespace cgw;

namespace {

std::vector<Matrix> all_invertible_2x2(FieldSpec f) {
  std::vector<Matrix> out;
  const auto els = all_elements(f);
  for (const auto& a : els)
    for (const auto& b : els)
      for (const auto& c : els)
        for (const auto& d : els) {
          Matrix m(2, 2);
          m << a, b, c, d;
          if (!det(m).is_zero()) out.push_back(m);
        }
  return out;
}

bool exhaustive_conjugate(const std::vector<Matrix>& group, const Matrix& x, const Matrix& y) {
  for (const auto& g : group)
    if (equal(g * x, y * g)) return true;
  return false;
}

}  // namespace

TEST_CASE("membership") {
  const FieldSpec f3 = make_field(3, 1), f9 = make_field(3, 2);
  for (const auto& g : {make_group(Family::GL, 3, f3), make_group(Family::Sp, 4, f9), make_group(Family::U, 4, f9, 3),
                        make_group(Family::Oodd, 5, f9), make_group(Family::Oeven, 4, f9)})
    CHECK(membership(g, identity(g.field, g.n)).ok);
  const auto sl = membership(make_group(Family::SL, 2, f3), from_ints(f3, {{2, 0}, {0, 1}}));
  CHECK_FALSE(sl.ok);
  CHECK(sl.reason.find("det") != std::string::npos);
  CHECK_THROWS(membership(make_group(Family::GL, 3, f3), identity(f3, 2)));
  CHECK_THROWS(membership(make_group(Family::GL, 2, f3), identity(f9, 2)));
}

TEST_CASE("group specs reject bad forms") {
  const FieldSpec f = make_field(3, 2);
  CHECK_THROWS(make_group_with_form(Family::Sp, f, identity(f, 2)));
  CHECK_THROWS(make_group_with_form(Family::Oodd, f, form_matrix(FormKind::Symplectic, 2, f)));
  CHECK_THROWS(make_group_with_form(Family::U, f, form_matrix(FormKind::Symplectic, 2, f), 3));
  CHECK_THROWS(make_group(Family::U, 2, make_field(3, 3), 3));
}

TEST_CASE("generation matches brute-force and formula orders") {
  const FieldSpec f3 = make_field(3, 1), f9 = make_field(3, 2);
  CHECK(generate(make_group(Family::GL, 2, f3), 1000).size() == all_invertible_2x2(f3).size());
  std::size_t det_one = 0;
  for (const auto& m : all_invertible_2x2(f9)) det_one += det(m).is_one();
  CHECK(generate(make_group(Family::Sp, 2, f9), 1000).size() == det_one);
  CHECK(generate(make_group(Family::Sp, 2, f3), 1000).size() == 24);
  CHECK(generate(make_group(Family::Oodd, 3, f3), 1000).size() == 48);
  CHECK(generate(make_group(Family::U, 2, f9, 3), 1000).size() == 96);
  CHECK(*group_order(make_group(Family::Sp, 4, f3)) == 51840);
  CHECK_THROWS_AS(generate(make_group(Family::GL, 2, f9), 100), BudgetExceeded);
}

TEST_CASE("generated elements are closed under products") {
  const FieldSpec f3 = make_field(3, 1);
  for (const auto& g : {make_group(Family::Sp, 2, f3), make_group(Family::GL, 2, f3), make_group(Family::Oodd, 3, f3)}) {
    const auto els = generate(g, 1000);
    std::set<std::vector<std::uint32_t>> keys;
    for (const auto& e : els) keys.insert(entry_key(e));
    for (const auto& a : els)
      for (const auto& b : els) CHECK(keys.count(entry_key(a * b)) == 1);
  }
}

TEST_CASE("GL fast path agrees with exhaustive search on GL(2,3)") {
  const FieldSpec f = make_field(3, 1);
  const auto g = make_group(Family::GL, 2, f);
  const auto els = generate(g, 1000);
  for (std::size_t i = 0; i < els.size(); i += 3)
    for (std::size_t j = 0; j < els.size(); j += 5) {
      const auto r = is_conjugate_in_group(g, els[i], els[j], SearchOptions{});
      CHECK((r.status == Status::Found) == exhaustive_conjugate(els, els[i], els[j]));
      CHECK(r.status != Status::Unknown);
      if (r.conjugator) CHECK(equal(*r.conjugator * els[i], els[j] * *r.conjugator));
    }
}

TEST_CASE("conjugacy is an equivalence on Sp(2,3)") {
  const FieldSpec f = make_field(3, 1);
  const auto g = make_group(Family::Sp, 2, f);
  const auto els = generate(g, 1000);
  const auto classes = conjugacy_classes(g, 1000);
  std::uint64_t total = 0;
  for (auto s : classes.sizes) total += s;
  CHECK(total == els.size());
  for (const auto& x : els)
    for (const auto& y : els) {
      const bool xy = is_conjugate_in_group(g, x, y, SearchOptions{}).status == Status::Found;
      const bool yx = is_conjugate_in_group(g, y, x, SearchOptions{}).status == Status::Found;
      CHECK(xy == yx);
      CHECK(xy == exhaustive_conjugate(els, x, y));
    }
}

TEST_CASE("U fast path agrees with exhaustive search on unipotents of U(2,3)") {
  const FieldSpec f = make_field(3, 2);
  const auto g = make_group(Family::U, 2, f, 3);
  const auto els = generate(g, 1000);
  std::vector<Matrix> unip;
  for (const auto& e : els) {
    const Matrix n = e - identity(f, 2);
    if (is_zero(n * n)) unip.push_back(e);
  }
  CHECK(unip.size() > 1);
  for (const auto& x : unip)
    for (const auto& y : unip) {
      const auto r = is_conjugate_in_group(g, x, y, SearchOptions{});
      CHECK((r.status == Status::Found) == exhaustive_conjugate(els, x, y));
    }
}

TEST_CASE("Sp(2) examples") {
  const FieldSpec f9 = make_field(3, 2), f3 = make_field(3, 1);
  const FieldElement t = FieldElement::generator(f9);
  Matrix x = identity(f9, 2), y = identity(f9, 2);
  x(0, 1) = FieldElement::one(f9);
  y(0, 1) = t;
  const auto r = is_conjugate_in_group(make_group(Family::Sp, 2, f9), x, y, SearchOptions{});
  REQUIRE(r.status == Status::Found);
  const Matrix& c = *r.conjugator;
  CHECK(c(0, 1).is_zero());
  CHECK(c(1, 0).is_zero());
  CHECK(c(0, 0) * c(0, 0) == t);
  CHECK(c(1, 1) == c(0, 0).inverse());

  const auto n = is_conjugate_in_group(make_group(Family::Sp, 2, f3), from_ints(f3, {{1, 1}, {0, 1}}),
                                       from_ints(f3, {{1, 2}, {0, 1}}), SearchOptions{});
  CHECK(n.status == Status::NotFound);
  CHECK(n.exhaustive);
}

TEST_CASE("X == Y gives the identity") {
  const FieldSpec f = make_field(5, 1);
  const auto g = make_group(Family::GL, 2, f);
  const Matrix x = from_ints(f, {{1, 1}, {0, 1}});
  const auto r = is_conjugate_in_group(g, x, x, SearchOptions{});
  CHECK(r.method == "identity");
  CHECK(is_identity(*r.conjugator));
}

TEST_CASE("SL conjugators are adjusted to determinant one") {
  const FieldSpec f = make_field(7, 1);
  const auto g = make_group(Family::SL, 3, f);
  const Matrix x = from_ints(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  const Matrix p = from_ints(f, {{2, 1, 0}, {1, 1, 0}, {3, 0, 1}});  // det 1
  REQUIRE(det(p).is_one());
  const Matrix y = p * x * *inverse(p);
  SearchOptions o;
  o.lex_cap = 1;  // force the sampling path
  const auto r = is_conjugate_in_group(g, x, y, o);
  REQUIRE(r.status == Status::Found);
  CHECK(det(*r.conjugator).is_one());
  CHECK(equal(*r.conjugator * x, y * *r.conjugator));
}

TEST_CASE("centralizer spaces") {
  const FieldSpec f5 = make_field(5, 1), f9 = make_field(3, 2);
  const auto gl3 = make_group(Family::GL, 3, f5);
  const auto c = centralizer_space(gl3, from_ints(f5, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  CHECK(c.basis.size() == 5);
  CHECK(c.eigen_blocks.size() == 2);
  CHECK(centralizer_space(gl3, identity(f5, 3)).basis.size() == 9);
  const FieldElement t = FieldElement::generator(f9);
  Matrix a = identity(f9, 4);
  a(0, 0) = t;
  a(1, 1) = t.inverse();
  const auto s = centralizer_space(make_group(Family::SL, 4, f9), a);
  CHECK(s.basis.size() == 6);
  CHECK(s.shape.find("det = 1") != std::string::npos);
  CHECK_THROWS(centralizer_space(make_group(Family::SL, 2, f5), from_ints(f5, {{2, 0}, {0, 1}})));
}

TEST_CASE("transport carries one form to another") {
  const FieldSpec f = make_field(3, 2);
  auto check_pair = [&](const GroupSpec& a, const GroupSpec& b) {
    const Matrix p = transport_matrix(a, b);
    const Matrix lhs = form_adjoint_transpose(b, p) * *b.form * p;
    // equal to J_a up to a scalar for odd orthogonal groups
    bool scaled = false;
    for (const auto& s : all_elements(f))
      if (!s.is_zero()) scaled |= equal(lhs, s * *a.form);
    CHECK(scaled);
    const auto els_a = standard_generators(a, 1);
    for (const auto& m : els_a) CHECK(membership(b, p * m * *inverse(p)).ok);
  };
  check_pair(make_group(Family::Oodd, 5, f, FormKind::OrthO5Variant), make_group(Family::Oodd, 5, f));
  check_pair(make_group(Family::Oeven, 4, f, FormKind::OrthO4Variant), make_group(Family::Oeven, 4, f));
  check_pair(make_group(Family::U, 4, f, FormKind::HermAntidiag, std::nullopt, 3),
             make_group(Family::U, 4, f, FormKind::HermIdentity, std::nullopt, 3));
  check_pair(make_group(Family::Sp, 4, f), make_group(Family::Sp, 4, f));
  check_pair(make_group(Family::Oodd, 3, f, FormKind::OrthOdd, FieldElement::generator(f)),
             make_group(Family::Oodd, 3, f));
}

TEST_CASE("group json round trip") {
  const FieldSpec f = make_field(3, 2);
  for (const auto& g : {make_group(Family::U, 4, f, 3), make_group(Family::Oodd, 5, f, FormKind::OrthO5Variant),
                        make_group(Family::GL, 3, f)}) {
    const auto back = group_from_json(to_json(g));
    CHECK(back.label() == g.label());
    CHECK(back.form.has_value() == g.form.has_value());
    if (g.form) CHECK(equal(*back.form, *g.form));
  }
}
