#include "cgw/witnesses.hpp"

#include <doctest.h>

using namespace cgw;

namespace {

bool not_found(const GlobalResult& g) {
  return g.status == GlobalStatus::Symbolic || g.status == GlobalStatus::Exhausted;
}

WitnessPair swapped(const WitnessPair& w) {
  WitnessPair s = w;
  std::swap(s.phi1, s.phi2);
  return s;
}

}  // namespace

TEST_CASE("abelian source enumeration") {
  AbelianSource s{{2, 3}};
  CHECK(s.order() == 6);
  const auto els = s.elements();
  REQUIRE(els.size() == 6);
  CHECK(els[1] == std::vector<std::uint64_t>{0, 1});
  CHECK(els[3] == std::vector<std::uint64_t>{1, 0});
  CHECK(tuple_label({1, 2}) == "(1,2)");
}

TEST_CASE("Sp(2,9) base pair against full enumeration") {
  const FieldSpec f = make_field(3, 2);
  const auto w = construct_witness(Family::Sp, 2, f);
  validate(w);
  const auto group = generate(w.phi1.target, 10'000);
  REQUIRE(group.size() == 720);

  const auto e = element_conjugate(w, SearchOptions{});
  CHECK(e.status == ElementStatus::Verified);
  CHECK(e.certificates.size() == w.phi1.source.order());
  const auto eb = element_conjugate_by_enumeration(w, group);
  CHECK(eb.status == ElementStatus::Verified);
  for (const auto& h : w.phi1.source.elements()) {
    const Matrix& c = e.certificates.at(tuple_label(h));
    CHECK(membership(w.phi1.target, c).ok);
    CHECK(equal(c * w.phi1(h), w.phi2(h) * c));
  }

  const auto g = globally_conjugate(w, SearchOptions{});
  CHECK(not_found(g));
  CHECK_FALSE(g.conjugator);
  CHECK(global_by_enumeration(w, group).outcome == GlobalStatus::Exhausted);
  CHECK(not_found(globally_conjugate(swapped(w), SearchOptions{})));
}

TEST_CASE("GL(2,9) base pair against full enumeration") {
  const FieldSpec f = make_field(3, 2);
  const auto w = construct_witness(Family::GL, 2, f);
  const auto group = generate(w.phi1.target, 10'000);
  REQUIRE(group.size() == 5760);
  CHECK(element_conjugate(w, SearchOptions{}).status == ElementStatus::Verified);
  CHECK(element_conjugate_by_enumeration(w, group).status == ElementStatus::Verified);
  CHECK(not_found(globally_conjugate(w, SearchOptions{})));
  CHECK(global_by_enumeration(w, group).outcome == GlobalStatus::Exhausted);
}

TEST_CASE("GL(2) negative control fails at (1,2)") {
  const FieldSpec f = make_field(5, 2);
  const auto w = witness_gl2(f, FieldElement::one(f), FieldElement::from_int(f, 2), Unchecked{});
  const auto e = element_conjugate(w, SearchOptions{});
  CHECK(e.status == ElementStatus::Fails);
  REQUIRE(e.at);
  CHECK(tuple_label(*e.at) == "(1,2)");
  CHECK_THROWS_AS(witness_gl2(f, FieldElement::one(f), FieldElement::from_int(f, 2)), std::invalid_argument);
}

TEST_CASE("U(4) base pair") {
  const FieldSpec f = make_field(3, 2);
  const FieldElement t = FieldElement::generator(f);
  CHECK_THROWS(witness_u4(f, 3, t));  // norm one
  CHECK_THROWS(witness_u4(f, 3, FieldElement::from_int(f, 2)));
  const auto w = witness_u4(f, 3, FieldElement::from_coeffs(f, {1, 1}));
  CHECK(element_conjugate(w, SearchOptions{}).status == ElementStatus::Verified);
  CHECK(not_found(globally_conjugate(w, SearchOptions{})));
  // the norm-one parameter is globally conjugate
  const auto bad = witness_u4(f, 3, t, Unchecked{});
  CHECK(globally_conjugate(bad, SearchOptions{}).status == GlobalStatus::Found);
}

TEST_CASE("orthogonal base pairs") {
  const FieldSpec f = make_field(3, 2);
  const FieldElement t = FieldElement::generator(f);
  for (const auto& w : {witness_o5(f, t), witness_o4(f, t)}) {
    validate(w);
    CHECK(element_conjugate(w, SearchOptions{}).status == ElementStatus::Verified);
    CHECK(not_found(globally_conjugate(w, SearchOptions{})));
  }
}

TEST_CASE("sp2 preconditions") {
  const FieldSpec f = make_field(3, 2);
  CHECK_THROWS(witness_sp2(f, FieldElement::from_int(f, 2)));
  CHECK_THROWS(witness_sp2(f, FieldElement::primitive(f)));  // not a square
  CHECK_NOTHROW(witness_sp2(f, FieldElement::generator(f)));
}

TEST_CASE("lifted witnesses stay element-conjugate and not globally conjugate") {
  const FieldSpec f = make_field(3, 2);
  const std::vector<std::pair<Family, int>> cases{{Family::GL, 3}, {Family::GL, 4}, {Family::SL, 3},
                                                  {Family::SL, 4}, {Family::Sp, 4}, {Family::U, 5},
                                                  {Family::Oodd, 7}, {Family::Oeven, 6}};
  for (auto [fam, n] : cases) {
    CAPTURE(to_string(fam));
    CAPTURE(n);
    const auto w = construct_witness(fam, n, f);
    validate(w);
    CHECK(w.phi1.target.n == n);
    CHECK(element_conjugate(w, SearchOptions{}).status == ElementStatus::Verified);
    CHECK(not_found(globally_conjugate(w, SearchOptions{})));
  }
}

TEST_CASE("det twist") {
  const FieldSpec f9 = make_field(3, 2);
  CHECK_THROWS_AS(sl_witness_via_det_twist(construct_witness(Family::GL, 2, f9)), std::invalid_argument);
  const auto w = sl_witness_via_det_twist(construct_witness(Family::GL, 3, f9));
  CHECK(w.phi1.target.family == Family::SL);
  for (const auto& m : w.phi1.images) CHECK(det(m).is_one());
  CHECK(element_conjugate(w, SearchOptions{}).status == ElementStatus::Verified);
  CHECK(not_found(globally_conjugate(w, SearchOptions{})));
}

TEST_CASE("unsupported cases") {
  const FieldSpec f = make_field(3, 2);
  CHECK_THROWS_AS(construct_witness(Family::U, 3, f), UnsupportedWitness);
  CHECK_THROWS_AS(construct_witness(Family::Oodd, 3, f), UnsupportedWitness);
  CHECK_THROWS_AS(construct_witness(Family::GL, 1, f), UnsupportedWitness);
  CHECK_THROWS_AS(construct_witness(Family::Sp, 3, f), UnsupportedWitness);
}

TEST_CASE("validation rejects bad homs") {
  const FieldSpec f = make_field(3, 1);
  const auto g = make_group(Family::GL, 2, f);
  Hom h{AbelianSource{{3, 3}}, g, {from_ints(f, {{1, 1}, {0, 1}}), from_ints(f, {{1, 0}, {1, 1}})}};
  CHECK_THROWS_AS(validate(h), std::invalid_argument);
  h.images[1] = from_ints(f, {{2, 0}, {0, 1}});
  CHECK_THROWS_AS(validate(h), std::invalid_argument);  // order 2 does not divide 3
}

TEST_CASE("stability under extension") {
  const FieldSpec f = make_field(3, 2);
  const auto w = construct_witness(Family::Sp, 2, f);
  const auto s = stability_check(w, SearchOptions{});
  CHECK(not_found(s));
  CHECK(s.level == "3^4");
}

TEST_CASE("reports are deterministic") {
  const FieldSpec f = make_field(5, 2);
  auto run = [&] {
    auto w = construct_witness(Family::GL, 3, f);
    w.element = element_conjugate(w, SearchOptions{});
    w.global = globally_conjugate(w, SearchOptions{});
    return to_json(w).dump();
  };
  const std::string a = run();
  CHECK(a == run());
  const auto j = nlohmann::json::parse(a);
  CHECK(j.contains("phi1"));
  CHECK(j["element_conjugate"]["status"].is_string());
  CHECK(j["global"]["evidence"].is_array());
}
