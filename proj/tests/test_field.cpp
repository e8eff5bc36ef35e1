#include "cgw/field.hpp"

#include <doctest.h>

#include <set>

using namespace cgw;

namespace {

// Multiplicative inverse by scanning the field.
FieldElement brute_inverse(const FieldElement& x) {
  for (const auto& y : all_elements(x.field()))
    if ((x * y).is_one()) return y;
  throw std::logic_error("no inverse");
}

}  // namespace

TEST_CASE("moduli are the lex-smallest irreducibles") {
  CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(make_field(5, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(make_field(3, 1).q() == 3);
  CHECK(make_field(3, 4).q() == 81);
  CHECK(make_field(3, 2) == make_field(3, 2));
}

TEST_CASE("unsupported characteristics are rejected") {
  CHECK_THROWS_AS(make_field(2, 2), FieldError);
  CHECK_THROWS_AS(make_field(9, 1), FieldError);
  CHECK_THROWS(make_field(3, 0));
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, k] : {std::pair{3u, 1}, std::pair{3u, 2}, std::pair{5u, 2}}) {
    const FieldSpec f = make_field(p, k);
    const auto els = all_elements(f);
    REQUIRE(els.size() == f.q());
    for (const auto& a : els) {
      CHECK(a + (-a) == FieldElement::zero(f));
      if (!a.is_zero()) CHECK(a.inverse() == brute_inverse(a));
      for (const auto& b : els) {
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
      }
    }
  }
}

TEST_CASE("t squared is -1 in F_9") {
  const FieldSpec f = make_field(3, 2);
  const FieldElement t = FieldElement::generator(f);
  CHECK(t * t == FieldElement::from_int(f, -1));
  CHECK(t.pow(4).is_one());
  CHECK(t.order() == 4);
}

TEST_CASE("element order is lexicographic on coefficients") {
  const FieldSpec f = make_field(3, 2);
  const auto els = all_elements(f);
  CHECK(els[0].is_zero());
  CHECK(els[1] == FieldElement::generator(f));  // [0,1]
  CHECK(els[3].is_one());                       // [1,0]
  for (std::uint32_t r = 0; r < f.q(); ++r) CHECK(element_rank(element_at_rank(f, r)) == r);
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (auto [p, k] : {std::pair{3u, 2}, std::pair{5u, 2}, std::pair{7u, 1}}) {
    const FieldSpec f = make_field(p, k);
    std::set<std::uint32_t> seen;
    FieldElement x = FieldElement::one(f);
    for (std::uint32_t i = 0; i + 1 < f.q(); ++i, x *= FieldElement::primitive(f)) seen.insert(element_rank(x));
    CHECK(seen.size() == f.q() - 1);
    for (const auto& y : all_elements(f))
      if (!y.is_zero()) CHECK(FieldElement::primitive(f).pow(y.log()) == y);
  }
}

TEST_CASE("Frobenius and the unitary involution") {
  const FieldSpec f = make_field(3, 2);
  for (const auto& x : all_elements(f)) {
    CHECK(frobenius(x, 1) == x.pow(3));
    CHECK(unitary_sigma(unitary_sigma(x, 3), 3) == x);
    CHECK((unitary_sigma(x, 3) == x) == x.in_prime_field());
  }
  CHECK_THROWS(check_unitary_level(make_field(3, 4), 3));
  CHECK_NOTHROW(check_unitary_level(make_field(3, 4), 9));
}

TEST_CASE("embeddings are ring maps and compatible along towers") {
  const FieldSpec f9 = make_field(3, 2), f81 = make_field(3, 4), f729 = make_field(3, 6);
  const FieldSpec f3 = make_field(3, 1);
  for (const auto& a : all_elements(f9)) {
    for (const auto& b : all_elements(f9)) {
      CHECK(embed(a * b, f81) == embed(a, f81) * embed(b, f81));
      CHECK(embed(a + b, f729) == embed(a, f729) + embed(b, f729));
    }
  }
  for (const auto& a : all_elements(f3)) CHECK(embed(embed(a, f9), f81) == embed(a, f81));
  CHECK_THROWS(embed(FieldElement::generator(f9), make_field(3, 3)));
}

TEST_CASE("squares, roots and power-map inverses") {
  const FieldSpec f = make_field(3, 2);
  int squares = 0;
  for (const auto& x : all_elements(f)) {
    if (x.is_zero()) continue;
    bool brute = false;
    for (const auto& y : all_elements(f)) brute |= (y * y == x);
    CHECK(is_square(x) == brute);
    if (brute) {
      ++squares;
      CHECK(sqrt(x) * sqrt(x) == x);
    }
    CHECK(power_map_inverse(x, 3).pow(3) == x);
  }
  CHECK(squares == 4);
  CHECK(is_square(FieldElement::generator(f)));
  CHECK_THROWS(power_map_inverse(FieldElement::generator(f), 2));
}

TEST_CASE("parse and print round trip") {
  const FieldSpec f = make_field(5, 2);
  for (const auto& x : all_elements(f)) CHECK(FieldElement::parse(f, x.to_string()) == x);
  CHECK(FieldSpec::parse(f.to_string()) == f);
  CHECK(FieldSpec::parse("p=5;k=2") == f);
  CHECK_THROWS_AS(FieldSpec::parse("p=5;k=2;mod=1,0,1"), FieldError);
  CHECK_THROWS_AS(FieldElement::parse(f, "1,2"), FieldError);
}

TEST_CASE("literals coerce into the other operand's field") {
  const FieldSpec f = make_field(3, 2);
  const FieldElement t = FieldElement::generator(f);
  CHECK(t + FieldElement(0) == t);
  CHECK(t * FieldElement(1) == t);
  CHECK_THROWS(t + FieldElement::one(make_field(5, 1)));
}
