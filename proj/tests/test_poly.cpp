#include "cgw/poly.hpp"

#include <doctest.h>

using namespace cgw;

namespace {

std::vector<Poly> monic_of_degree(FieldSpec f, int d) {
  std::vector<Poly> out;
  const auto els = all_elements(f);
  std::vector<std::uint32_t> idx(d, 0);
  for (;;) {
    std::vector<FieldElement> c;
    for (int i = 0; i < d; ++i) c.push_back(els[idx[i]]);
    c.push_back(FieldElement::one(f));
    out.emplace_back(f, c);
    int i = 0;
    while (i < d && ++idx[i] == f.q()) idx[i++] = 0;
    if (i == d) return out;
  }
}

// Trial division by every monic polynomial of degree 1 .. deg/2.
bool brute_irreducible(const Poly& f) {
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const auto& g : monic_of_degree(f.field(), d))
      if ((f % g).is_zero()) return false;
  return f.degree() >= 1;
}

int mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  return n > 1 ? -r : r;
}

// Necklace count of monic irreducibles of degree d over F_q.
long necklace(long q, int d) {
  long s = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) {
      long qe = 1;
      for (int i = 0; i < e; ++i) qe *= q;
      s += mobius(d / e) * qe;
    }
  return s / d;
}

Poly from(FieldSpec f, std::vector<int> c) {
  std::vector<FieldElement> e;
  for (int x : c) e.push_back(FieldElement::from_int(f, x));
  return Poly(f, e);
}

}  // namespace

TEST_CASE("irreducible counts match the necklace formula") {
  for (auto [p, k] : {std::pair{3u, 1}, std::pair{5u, 1}, std::pair{3u, 2}}) {
    const FieldSpec f = make_field(p, k);
    for (int d = 1; d <= (k == 1 ? 4 : 2); ++d) {
      const auto irr = monic_irreducibles(f, d);
      CHECK(static_cast<long>(irr.size()) == necklace(f.q(), d));
      for (std::size_t i = 1; i < irr.size(); ++i) CHECK(poly_less(irr[i - 1], irr[i]));
    }
  }
}

TEST_CASE("is_irreducible agrees with trial division") {
  const FieldSpec f = make_field(3, 1);
  for (int d = 1; d <= 4; ++d)
    for (const auto& g : monic_of_degree(f, d)) CHECK(is_irreducible(g) == brute_irreducible(g));
}

TEST_CASE("factorization multiplies back and has irreducible factors") {
  for (auto [p, k, maxd] : {std::tuple{3u, 1, 5}, std::tuple{5u, 1, 3}, std::tuple{3u, 2, 3}}) {
    const FieldSpec f = make_field(p, k);
    for (int d = 1; d <= maxd; ++d)
      for (const auto& g : monic_of_degree(f, d)) {
        const auto fac = factorize(g);
        Poly prod = Poly::constant(f, FieldElement::one(f));
        for (std::size_t i = 0; i < fac.size(); ++i) {
          CHECK(brute_irreducible(fac[i].poly));
          CHECK(fac[i].poly.is_monic());
          if (i) CHECK(poly_less(fac[i - 1].poly, fac[i].poly));
          for (int m = 0; m < fac[i].multiplicity; ++m) prod = prod * fac[i].poly;
        }
        CHECK(prod == g);
      }
  }
}

TEST_CASE("factorization handles p-th powers") {
  const FieldSpec f = make_field(3, 1);
  const Poly x1 = Poly::linear(FieldElement::one(f));
  const Poly g = x1 * x1 * x1 * from(f, {1, 0, 1});
  const auto fac = factorize(g);
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].poly == x1);
  CHECK(fac[0].multiplicity == 3);
}

TEST_CASE("dual inverts roots") {
  const FieldSpec f = make_field(5, 1);
  for (const auto& r : all_elements(f))
    for (const auto& s : all_elements(f)) {
      if (r.is_zero() || s.is_zero()) continue;
      const Poly g = Poly::linear(r) * Poly::linear(s);
      CHECK(dual(g) == Poly::linear(r.inverse()) * Poly::linear(s.inverse()));
    }
  CHECK_THROWS(dual(Poly::x(f)));
}

TEST_CASE("twisted dual inverts sigma of the roots") {
  const FieldSpec f = make_field(3, 2);
  for (const auto& r : all_elements(f)) {
    if (r.is_zero()) continue;
    CHECK(twisted_dual(Poly::linear(r), 3) == Poly::linear(unitary_sigma(r, 3).inverse()));
    // roots of norm one are fixed
    CHECK(is_tilde_symmetric(Poly::linear(r), 3) == r.pow(4).is_one());
  }
}

TEST_CASE("Milnor types") {
  const FieldSpec f = make_field(5, 1);
  CHECK(milnor_type(from(f, {-1, 1})).type == MilnorType::Type3);
  CHECK(milnor_type(from(f, {1, 1})).type == MilnorType::Type3);
  // x^2 + 1 = (x - 2)(x - 3) over F_5 with 3 = 2^-1
  const auto m = milnor_type(from(f, {1, 0, 1}));
  CHECK(m.type == MilnorType::Type2);
  REQUIRE(m.g);
  CHECK(*m.g * dual(*m.g) == from(f, {1, 0, 1}));
  // x^2 + x + 1 over F_5 is irreducible with constant term 1
  CHECK(milnor_type(from(f, {1, 1, 1})).type == MilnorType::Type1);
  CHECK_THROWS(milnor_type(from(f, {-1, 0, 1})));  // (x-1)(x+1)
  CHECK_FALSE(is_star_irreducible(from(f, {2, 1})));
}

TEST_CASE("polynomial parse round trip") {
  const FieldSpec f = make_field(3, 2);
  const Poly g(f, {FieldElement::generator(f), FieldElement::zero(f), FieldElement::one(f)});
  CHECK(Poly::parse(g.to_string()) == g);
  CHECK_THROWS(Poly::parse("<[1]>"));
}
