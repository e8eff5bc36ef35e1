#include "cgw/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cgw {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw FieldError("polynomials over different fields; embed explicitly");
}

std::uint64_t poly_hash(const Poly& f) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(f.field().q());
  for (const auto& c : f.coeffs()) mix(c.index());
  return h;
}

void require_reciprocal_domain(const Poly& f) {
  if (!f.is_monic()) throw std::invalid_argument("dual needs a monic polynomial");
  if (f.coeff(0).is_zero()) throw std::invalid_argument("dual needs f(0) != 0");
}

// f = product of (factor, multiplicity), each factor squarefree.
std::vector<Factor> squarefree_decomposition(const Poly& f) {
  std::vector<Factor> out;
  const FieldSpec F = f.field();
  const std::uint32_t p = F.p();
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.push_back({fac, i});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    // c is a p-th power: take the p-th root coefficientwise.
    std::vector<FieldElement> root;
    for (int j = 0; j <= c.degree(); j += static_cast<int>(p)) root.push_back(frobenius(c.coeff(j), F.k() - 1));
    for (auto& [g, m] : squarefree_decomposition(Poly(F, root))) out.push_back({g, m * static_cast<int>(p)});
  }
  return out;
}

// a^{(q^d - 1)/2} mod f, computed as prod_i (a^{(q-1)/2})^{q^i}.
Poly half_power(const Poly& a, int d, const Poly& f) {
  const std::uint64_t q = f.field().q();
  Poly b = powmod(a, (q - 1) / 2, f);
  Poly acc = b;
  for (int i = 1; i < d; ++i) {
    b = powmod(b, q, f);
    acc = (acc * b) % f;
  }
  return acc;
}

void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const FieldSpec F = f.field();
  std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
  for (;;) {
    std::vector<FieldElement> c(f.degree());
    for (auto& e : c) e = FieldElement(F, pick(rng));
    Poly a(F, c);
    if (a.degree() < 1) continue;
    Poly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    Poly b = half_power(a, d, f) - Poly::constant(F, FieldElement::one(F));
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

Poly::Poly(FieldSpec f, std::vector<FieldElement> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = c.in(f);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(FieldSpec f, const FieldElement& c) { return Poly(f, {c}); }

Poly Poly::x(FieldSpec f) { return Poly(f, {FieldElement::zero(f), FieldElement::one(f)}); }

Poly Poly::linear(const FieldElement& r) { return Poly(r.field(), {-r, FieldElement::one(r.field())}); }

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement::zero(field_);
  return coeffs_[i];
}

FieldElement Poly::eval(const FieldElement& at) const {
  FieldElement acc = FieldElement::zero(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return lead().inverse() * *this;
}

Poly Poly::derivative() const {
  std::vector<FieldElement> c;
  for (int i = 1; i <= degree(); ++i) c.push_back(FieldElement::from_int(field_, i) * coeffs_[i]);
  return Poly(field_, c);
}

std::string Poly::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i].to_string();
  os << ">@" << field_.to_string();
  return os.str();
}

Poly Poly::parse(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos || text.empty() || text.front() != '<') {
    throw FieldError("malformed polynomial: " + std::string(text));
  }
  FieldSpec f = FieldSpec::parse(text.substr(at + 1));
  std::string_view body = text.substr(1, at - 1);
  if (body.empty() || body.back() != '>') throw FieldError("malformed polynomial: " + std::string(text));
  body.remove_suffix(1);
  std::vector<FieldElement> c;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto open = body.find('[', pos);
    if (open == std::string_view::npos) break;
    const auto close = body.find(']', open);
    if (close == std::string_view::npos) throw FieldError("malformed polynomial: " + std::string(text));
    c.push_back(FieldElement::parse(f, body.substr(open, close - open + 1)));
    pos = close + 1;
  }
  return Poly(f, c);
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  std::vector<FieldElement> c(std::max(a.degree(), b.degree()) + 1, FieldElement::zero(a.field()));
  for (int i = 0; i <= a.degree(); ++i) c[i] += a.coeff(i);
  for (int i = 0; i <= b.degree(); ++i) c[i] += b.coeff(i);
  return Poly(a.field(), c);
}

Poly operator-(const Poly& a, const Poly& b) {
  return a + FieldElement::from_int(b.field(), -1) * b;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  std::vector<FieldElement> c(a.degree() + b.degree() + 1, FieldElement::zero(a.field()));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  return Poly(a.field(), c);
}

Poly operator*(const FieldElement& s, const Poly& a) {
  std::vector<FieldElement> c;
  for (const auto& x : a.coeffs()) c.push_back(s * x);
  return Poly(a.field(), c);
}

bool operator==(const Poly& a, const Poly& b) { return a.field() == b.field() && a.coeffs() == b.coeffs(); }

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    const auto ra = element_rank(a.coeff(i));
    const auto rb = element_rank(b.coeff(i));
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldSpec F = a.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<FieldElement> rem = a.coeffs();
  std::vector<FieldElement> quo(a.degree() - b.degree() + 1, FieldElement::zero(F));
  const FieldElement lead_inv = b.lead().inverse();
  for (int i = a.degree(); i >= b.degree(); --i) {
    const FieldElement c = rem[i] * lead_inv;
    if (c.is_zero()) continue;
    quo[i - b.degree()] = c;
    for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= c * b.coeff(j);
  }
  rem.resize(b.degree() > 0 ? b.degree() : 0);
  return {Poly(F, quo), Poly(F, rem)};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(Poly base, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::constant(mod.field(), FieldElement::one(mod.field())) % mod;
  base = base % mod;
  while (e > 0) {
    if (e & 1) r = (r * base) % mod;
    e >>= 1;
    if (e) base = (base * base) % mod;
  }
  return r;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const Poly g = f.monic();
  const Poly x = Poly::x(f.field());
  Poly xq = x;
  for (int i = 1; i <= g.degree() / 2; ++i) {
    xq = powmod(xq, f.field().q(), g);
    if (gcd(xq - x, g).degree() > 0) return false;
  }
  return true;
}

std::vector<Factor> factorize(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  const FieldSpec F = f.field();
  std::vector<Factor> raw;
  std::mt19937_64 rng(poly_hash(f));
  const Poly x = Poly::x(F);
  for (const auto& [part, mult] : squarefree_decomposition(f.monic())) {
    Poly g = part;
    Poly xq = x;
    for (int d = 1; 2 * d <= g.degree(); ++d) {
      xq = powmod(xq, F.q(), g);
      Poly h = gcd(xq - x, g);
      if (h.degree() > 0) {
        std::vector<Poly> pieces;
        equal_degree_split(h, d, rng, pieces);
        for (auto& piece : pieces) raw.push_back({piece, mult});
        g = g / h;
        xq = xq % g;
      }
    }
    if (g.degree() > 0) raw.push_back({g, mult});
  }
  std::sort(raw.begin(), raw.end(), [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  std::vector<Factor> out;
  for (auto& fac : raw) {
    if (!out.empty() && out.back().poly == fac.poly) {
      out.back().multiplicity += fac.multiplicity;
    } else {
      out.push_back(fac);
    }
  }
  return out;
}

std::vector<Poly> monic_irreducibles(FieldSpec f, int degree) {
  std::vector<Poly> out;
  if (degree < 1) return out;
  const auto elems = all_elements(f);
  std::vector<std::size_t> digits(degree, 0);
  // Odometer over c0..c_{d-1} with c_{d-1} fastest is not poly_less order;
  // collect then sort.
  for (;;) {
    std::vector<FieldElement> c;
    for (auto i : digits) c.push_back(elems[i]);
    c.push_back(FieldElement::one(f));
    Poly p(f, c);
    if (is_irreducible(p)) out.push_back(p);
    int pos = 0;
    while (pos < degree && ++digits[pos] == elems.size()) digits[pos++] = 0;
    if (pos == degree) break;
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

Poly dual(const Poly& f) {
  require_reciprocal_domain(f);
  std::vector<FieldElement> c(f.coeffs().rbegin(), f.coeffs().rend());
  return f.coeff(0).inverse() * Poly(f.field(), c);
}

Poly twisted_dual(const Poly& f, std::uint64_t base_q) {
  require_reciprocal_domain(f);
  check_unitary_level(f.field(), base_q);
  std::vector<FieldElement> c;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) c.push_back(unitary_sigma(*it, base_q));
  return unitary_sigma(f.coeff(0), base_q).inverse() * Poly(f.field(), c);
}

bool is_self_reciprocal(const Poly& f) { return dual(f) == f; }

bool is_tilde_symmetric(const Poly& f, std::uint64_t base_q) { return twisted_dual(f, base_q) == f; }

bool is_star_irreducible(const Poly& f) {
  require_reciprocal_domain(f);
  if (!is_self_reciprocal(f)) return false;
  const auto fac = factorize(f);
  if (fac.size() == 1 && fac[0].multiplicity == 1) return true;
  if (fac.size() == 2 && fac[0].multiplicity == 1 && fac[1].multiplicity == 1) {
    return dual(fac[0].poly) == fac[1].poly && fac[0].poly != fac[1].poly;
  }
  return false;
}

MilnorClass milnor_type(const Poly& f) {
  if (!is_star_irreducible(f)) throw std::invalid_argument("not *-irreducible: " + f.to_string());
  if (f.degree() == 1) return {MilnorType::Type3, std::nullopt};  // x - 1 or x + 1
  const auto fac = factorize(f);
  if (fac.size() == 1) return {MilnorType::Type1, std::nullopt};
  return {MilnorType::Type2, fac[0].poly};
}

std::string to_string(MilnorType t) {
  switch (t) {
    case MilnorType::Type1:
      return "Type1";
    case MilnorType::Type2:
      return "Type2";
    case MilnorType::Type3:
      return "Type3";
  }
  return "?";
}

Poly embed(const Poly& f, FieldSpec target) {
  return f.map_coeffs(target, [&](const FieldElement& c) { return embed(c, target); });
}

}  // namespace cgw
