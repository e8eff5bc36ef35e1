#include "cgw/class_data.hpp"
#include "cgw/groups.hpp"

#include <doctest.h>

using namespace cgw;

namespace {

Poly lin(FieldSpec f, int r) { return Poly::linear(FieldElement::from_int(f, r)); }

ClassFunction make_cf(GroupKind kind, int n, FieldSpec f, std::vector<std::pair<Poly, Partition>> e,
                      std::uint64_t base_q = 0) {
  ClassFunction c;
  c.kind = kind;
  c.n = n;
  c.field = f;
  c.base_q = base_q;
  for (auto& [k, v] : e) c.entries.emplace(k, v);
  return c;
}

}  // namespace

TEST_CASE("partition counts") {
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 0; n <= 8; ++n) CHECK(partitions_of(n).size() == p[n]);
  CHECK(partitions_of(3).front() == Partition({3}));
}

TEST_CASE("symplectic and orthogonal partitions") {
  CHECK(is_symplectic_partition(Partition({2})));
  CHECK_FALSE(is_symplectic_partition(Partition({1})));
  CHECK(is_symplectic_partition(Partition({1, 1})));
  CHECK(is_orthogonal_partition(Partition({3})));
  CHECK_FALSE(is_orthogonal_partition(Partition({2})));
  CHECK(is_orthogonal_partition(Partition({2, 2, 1})));
}

TEST_CASE("validation names the failing condition") {
  const FieldSpec f = make_field(5, 1);
  auto sp = make_cf(GroupKind::Sp, 1, f, {{lin(f, 1), Partition({2})}});
  CHECK(validate_class_function(sp).valid);
  auto o = make_cf(GroupKind::O, 2, f, {{lin(f, 1), Partition({2})}});
  const auto v = validate_class_function(o);
  CHECK_FALSE(v.valid);
  CHECK(v.violated.find("D_O") != std::string::npos);
  auto bad_size = make_cf(GroupKind::GL, 3, f, {{lin(f, 1), Partition({2})}});
  CHECK(validate_class_function(bad_size).violated.find("deg f = 3") != std::string::npos);
  // Sp needs lambda_{f*} = lambda_f: x - 2 pairs with x - 3
  auto unpaired = make_cf(GroupKind::Sp, 1, f, {{lin(f, 2), Partition({2})}});
  CHECK_FALSE(validate_class_function(unpaired).valid);
  auto paired = make_cf(GroupKind::Sp, 1, f, {{lin(f, 2), Partition({1})}, {lin(f, 3), Partition({1})}});
  CHECK(validate_class_function(paired).valid);
  CHECK_THROWS(validate_class_function(make_cf(GroupKind::GL, 1, f, {{Poly::x(f), Partition({1})}})));
}

TEST_CASE("GL and U enumeration matches brute-force class counts") {
  const FieldSpec f3 = make_field(3, 1), f5 = make_field(5, 1), f9 = make_field(3, 2);
  CHECK(enumerate_class_functions(GroupKind::GL, 1, f5).size() == 4);
  CHECK(enumerate_class_functions(GroupKind::GL, 2, f3).size() ==
        conjugacy_classes(make_group(Family::GL, 2, f3), 100000).sizes.size());
  CHECK(enumerate_class_functions(GroupKind::GL, 3, f3).size() ==
        conjugacy_classes(make_group(Family::GL, 3, f3), 100000).sizes.size());
  CHECK(enumerate_class_functions(GroupKind::U, 2, f9, 3).size() ==
        conjugacy_classes(make_group(Family::U, 2, f9, 3), 100000).sizes.size());
  CHECK(enumerate_class_functions(GroupKind::U, 3, f9, 3).size() ==
        conjugacy_classes(make_group(Family::U, 3, f9, 3), 100000).sizes.size());
}

TEST_CASE("finite Sp and O classes refine the class functions") {
  const FieldSpec f3 = make_field(3, 1);
  const auto sp = conjugacy_classes(make_group(Family::Sp, 2, f3), 100000);
  CHECK(sp.sizes.size() > enumerate_class_functions(GroupKind::Sp, 1, f3).size());
  // every finite class maps to a valid class function
  for (const auto& rep : sp.representatives) {
    ClassFunction c = elementary_divisors(rep);
    c.kind = GroupKind::Sp;
    c.n = 1;
    CHECK(validate_class_function(c).valid);
  }
  for (const auto& rep : conjugacy_classes(make_group(Family::Oodd, 3, f3), 100000).representatives) {
    ClassFunction c = elementary_divisors(rep);
    c.kind = GroupKind::O;
    CHECK(validate_class_function(c).valid);
  }
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_class_functions(GroupKind::GL, 4, make_field(5, 1), 0, 10), std::length_error);
}

TEST_CASE("closure view splits keys into roots") {
  const FieldSpec f = make_field(3, 1);
  auto c = make_cf(GroupKind::GL, 2, f, {{Poly(f, {FieldElement::one(f), FieldElement::zero(f), FieldElement::one(f)}),
                                          Partition({1})}});
  const auto v = closure_view(c);
  CHECK(v.entries.size() == 2);
  for (const auto& [k, lam] : v.entries) {
    CHECK(k.degree() == 1);
    CHECK(lam == Partition({1}));
  }
}

TEST_CASE("json round trip") {
  const FieldSpec f = make_field(3, 2);
  for (const auto& c : enumerate_class_functions(GroupKind::U, 2, f, 3)) {
    const auto back = class_function_from_json(to_json(c));
    CHECK(back.entries.size() == c.entries.size());
    CHECK(to_json(back) == to_json(c));
  }
}
