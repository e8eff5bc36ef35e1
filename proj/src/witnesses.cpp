#include "cgw/witnesses.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cgw {

std::uint64_t AbelianSource::order() const {
  std::uint64_t o = 1;
  for (auto m : moduli) o *= m;
  return o;
}

std::vector<std::vector<std::uint64_t>> AbelianSource::elements() const {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> h(moduli.size(), 0);
  for (;;) {
    out.push_back(h);
    std::size_t i = h.size();
    while (i > 0) {
      --i;
      if (++h[i] < moduli[i]) break;
      h[i] = 0;
      if (i == 0) return out;
    }
    if (h.empty()) return out;
  }
}

std::string tuple_label(const std::vector<std::uint64_t>& h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s + ")";
}

Matrix Hom::operator()(const std::vector<std::uint64_t>& h) const {
  if (h.size() != images.size()) throw std::invalid_argument("source tuple has the wrong length");
  Matrix m = identity(target.field, target.n);
  for (std::size_t i = 0; i < h.size(); ++i) m = m * power(images[i], static_cast<std::int64_t>(h[i]));
  return m;
}

void validate(const Hom& hom) {
  if (hom.images.size() != hom.source.moduli.size())
    throw std::invalid_argument("one image per source generator expected");
  for (std::size_t i = 0; i < hom.images.size(); ++i) {
    const auto& m = hom.images[i];
    if (const auto mem = membership(hom.target, m); !mem)
      throw std::invalid_argument("image " + std::to_string(i) + " not in " + hom.target.label() + ": " + mem.reason);
    if (!is_identity(power(m, static_cast<std::int64_t>(hom.source.moduli[i]))))
      throw std::invalid_argument("image " + std::to_string(i) + " does not have order dividing " +
                                  std::to_string(hom.source.moduli[i]));
    for (std::size_t j = i + 1; j < hom.images.size(); ++j)
      if (!equal(m * hom.images[j], hom.images[j] * m))
        throw std::invalid_argument("images " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  }
}

void validate(const WitnessPair& w) {
  if (w.phi1.source.moduli != w.phi2.source.moduli) throw std::invalid_argument("sources differ");
  if (w.phi1.target.label() != w.phi2.target.label() || w.phi1.target.form.has_value() != w.phi2.target.form.has_value() ||
      (w.phi1.target.form && !equal(*w.phi1.target.form, *w.phi2.target.form)))
    throw std::invalid_argument("targets differ");
  validate(w.phi1);
  validate(w.phi2);
}

std::string to_string(ElementStatus s) {
  switch (s) {
    case ElementStatus::Verified:
      return "verified";
    case ElementStatus::Fails:
      return "fails";
    case ElementStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(GlobalStatus s) {
  switch (s) {
    case GlobalStatus::Found:
      return "found";
    case GlobalStatus::Exhausted:
      return "exhausted";
    case GlobalStatus::Symbolic:
      return "symbolic";
    case GlobalStatus::Unknown:
      return "unknown";
  }
  return "?";
}

std::string level_string(FieldSpec f) { return std::to_string(f.p()) + "^" + std::to_string(f.k()); }

ElementResult element_conjugate(const WitnessPair& w, const SearchOptions& opts) {
  validate(w);
  ElementResult r;
  r.method = "is_conjugate_in_group";
  std::map<std::string, int> methods;
  for (const auto& h : w.phi1.source.elements()) {
    const Matrix x = w.phi1(h), y = w.phi2(h);
    const SearchResult s = is_conjugate_in_group(w.phi1.target, x, y, opts);
    r.work += s.work;
    ++methods[s.method];
    if (s.status == Status::Found) {
      r.certificates.emplace(tuple_label(h), *s.conjugator);
      continue;
    }
    r.at = h;
    r.status = s.status == Status::NotFound ? ElementStatus::Fails : ElementStatus::Inconclusive;
    r.note = tuple_label(h) + ": " + s.method + (s.note.empty() ? "" : " (" + s.note + ")");
    if (s.dimension >= 0) r.note += ", intertwiner dimension " + std::to_string(s.dimension);
    return r;
  }
  r.status = ElementStatus::Verified;
  std::string m;
  for (const auto& [k, v] : methods) m += (m.empty() ? "" : ", ") + k + " x" + std::to_string(v);
  r.note = m;
  return r;
}

ElementResult element_conjugate_by_enumeration(const WitnessPair& w, const std::vector<Matrix>& group) {
  validate(w);
  ElementResult r;
  r.method = "group-enumeration";
  for (const auto& h : w.phi1.source.elements()) {
    const Matrix x = w.phi1(h), y = w.phi2(h);
    bool found = false;
    for (const auto& g : group) {
      ++r.work;
      if (equal(g * x, y * g)) {
        r.certificates.emplace(tuple_label(h), g);
        found = true;
        break;
      }
    }
    if (!found) {
      r.status = ElementStatus::Fails;
      r.at = h;
      r.note = tuple_label(h) + ": no conjugator among " + std::to_string(group.size()) + " elements";
      return r;
    }
  }
  r.status = ElementStatus::Verified;
  return r;
}

namespace {

std::vector<std::pair<Matrix, Matrix>> generator_pairs(const WitnessPair& w) {
  std::vector<std::pair<Matrix, Matrix>> pairs;
  for (std::size_t i = 0; i < w.phi1.images.size(); ++i) pairs.emplace_back(w.phi1.images[i], w.phi2.images[i]);
  return pairs;
}

bool conjugates_all(const Matrix& g, const WitnessPair& w) {
  for (std::size_t i = 0; i < w.phi1.images.size(); ++i)
    if (!equal(g * w.phi1.images[i], w.phi2.images[i] * g)) return false;
  return true;
}

}  // namespace

GlobalEvidence global_by_enumeration(const WitnessPair& w, const std::vector<Matrix>& group,
                                     std::optional<Matrix>* conjugator) {
  validate(w);
  GlobalEvidence e;
  e.method = "group-enumeration";
  for (const auto& g : group) {
    ++e.work;
    if (conjugates_all(g, w)) {
      e.outcome = GlobalStatus::Found;
      if (conjugator) *conjugator = g;
      return e;
    }
  }
  e.outcome = GlobalStatus::Exhausted;
  e.note = std::to_string(group.size()) + " elements scanned";
  return e;
}

GlobalResult globally_conjugate(const WitnessPair& w, const SearchOptions& opts, GlobalOptions gopts) {
  validate(w);
  const GroupSpec& g = w.phi1.target;
  GlobalResult r;
  r.level = level_string(g.field);
  const auto basis = simultaneous_intertwiner(generator_pairs(w));
  r.dimension = static_cast<int>(basis.size());

  // The intertwiner space over an extension is spanned by the same basis, so
  // an identically vanishing determinant rules out conjugators at every level.
  GlobalEvidence sym;
  sym.method = "generic-determinant";
  const bool vanishes = generic_determinant_vanishes(basis);
  sym.outcome = vanishes ? GlobalStatus::Symbolic : GlobalStatus::Unknown;
  sym.note = vanishes ? "det of the generic intertwiner is the zero polynomial"
                      : "generic determinant is nonzero; no symbolic obstruction";
  r.evidence.push_back(sym);

  if (!vanishes || gopts.search_after_symbolic) {
    const SearchResult s = find_member_in_span(g, basis, opts);
    GlobalEvidence e;
    e.method = "span-search";
    e.work = s.work;
    e.note = s.method + ", dimension " + std::to_string(basis.size());
    if (!s.note.empty()) e.note += "; " + s.note;
    if (s.status == Status::Found) {
      if (!conjugates_all(*s.conjugator, w) || !membership(g, *s.conjugator))
        throw std::logic_error("span search returned a non-conjugator");
      e.outcome = GlobalStatus::Found;
      r.conjugator = s.conjugator;
    } else if (s.status == Status::NotFound && s.exhaustive) {
      e.outcome = GlobalStatus::Exhausted;
    } else {
      e.outcome = GlobalStatus::Unknown;
    }
    r.evidence.push_back(e);
  }

  const auto has = [&](GlobalStatus st) {
    return std::any_of(r.evidence.begin(), r.evidence.end(), [&](const auto& e) { return e.outcome == st; });
  };
  if (has(GlobalStatus::Found) && has(GlobalStatus::Symbolic))
    throw std::logic_error("symbolic certificate contradicts a found conjugator");
  if (has(GlobalStatus::Found))
    r.status = GlobalStatus::Found;
  else if (has(GlobalStatus::Symbolic))
    r.status = GlobalStatus::Symbolic;
  else if (has(GlobalStatus::Exhausted))
    r.status = GlobalStatus::Exhausted;
  else
    r.status = GlobalStatus::Unknown;
  if (r.status == GlobalStatus::Unknown) r.note = "intertwiner dimension " + std::to_string(r.dimension);
  return r;
}

GroupSpec extend_group(const GroupSpec& g, FieldSpec larger) {
  GroupSpec e = g;
  e.field = larger;
  if (g.form) e.form = embed(*g.form, larger);
  if (g.family == Family::U) {
    const int r = larger.k() / g.field.k();
    if (r % 2 == 0) throw std::invalid_argument("U needs an odd-degree extension");
    std::uint64_t bq = 1;
    for (int i = 0; i < r; ++i) bq *= g.base_q;
    e.base_q = bq;
  }
  validate(e);
  return e;
}

WitnessPair extend_pair(const WitnessPair& w, FieldSpec larger) {
  WitnessPair e = w;
  e.element.reset();
  e.global.reset();
  for (Hom* h : {&e.phi1, &e.phi2}) {
    h->target = extend_group(h->target, larger);
    for (auto& m : h->images) m = embed(m, larger);
  }
  e.provenance.push_back("extend:" + level_string(w.phi1.target.field) + "->" + level_string(larger));
  return e;
}

GlobalResult stability_check(const WitnessPair& w, const SearchOptions& opts) {
  const FieldSpec f = w.phi1.target.field;
  const int factor = w.phi1.target.family == Family::U ? 3 : 2;
  const WitnessPair e = extend_pair(w, make_field(f.p(), f.k() * factor));
  return globally_conjugate(e, opts);
}

namespace {

bool in_prime_field_or_zero(const FieldElement& x) { return x.is_zero() || x.in_prime_field(); }

Matrix unipotent2(FieldSpec f, const FieldElement& c) {
  Matrix m = identity(f, 2);
  m(0, 1) = c;
  return m;
}

WitnessPair swap_pair(const GroupSpec& g, const Matrix& x1, const Matrix& x2, std::string tag) {
  const std::uint64_t p = g.field.p();
  WitnessPair w;
  w.phi1 = {{{p, p}}, g, {x1, x2}};
  w.phi2 = {{{p, p}}, g, {x2, x1}};
  w.provenance.push_back(std::move(tag));
  validate(w);
  return w;
}

WitnessPair gl2_pair(FieldSpec f, const FieldElement& a, const FieldElement& b) {
  const FieldElement aa = a.in(f), bb = b.in(f);
  return swap_pair(make_group(Family::GL, 2, f), unipotent2(f, aa), unipotent2(f, bb),
                   "base:gl2-unipotent-swap(a=" + aa.to_string() + ",b=" + bb.to_string() + ")");
}

WitnessPair u4_pair(FieldSpec f, std::uint64_t base_q, const FieldElement& a) {
  const GroupSpec g = make_group(Family::U, 4, f, FormKind::HermAntidiag, std::nullopt, base_q);
  auto x = [&](const FieldElement& c) {
    Matrix m = identity(f, 4);
    m(0, 1) = c;
    m(2, 3) = -unitary_sigma(c, base_q);
    return m;
  };
  const FieldElement aa = a.in(f);
  return swap_pair(g, x(FieldElement::one(f)), x(aa), "base:u4-unipotent-swap(a=" + aa.to_string() + ")");
}

// diag(alpha_c, [1], t(alpha_c)^-1) with alpha_c = [[1,c],[0,1]].
Matrix orth_block(FieldSpec f, const FieldElement& c, bool middle) {
  const int n = middle ? 5 : 4;
  const int s = middle ? 3 : 2;
  Matrix m = identity(f, n);
  m(0, 1) = c;
  m(s + 1, s) = -c;
  return m;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_outside_prime_field(const FieldElement& a, const char* who) {
  require(!a.is_zero(), std::string(who) + ": a must be nonzero");
  require(!a.in_prime_field(), std::string(who) + ": a must lie outside the prime field");
}

}  // namespace

WitnessPair witness_gl2(FieldSpec f, const FieldElement& a, const FieldElement& b) {
  const FieldElement aa = a.in(f), bb = b.in(f);
  require(!aa.is_zero() && !bb.is_zero(), "witness_gl2: a and b must be nonzero");
  require(!in_prime_field_or_zero(bb / aa), "witness_gl2: a and b must be linearly independent over F_p");
  return gl2_pair(f, aa, bb);
}

WitnessPair witness_gl2(FieldSpec f, const FieldElement& a, const FieldElement& b, Unchecked) {
  WitnessPair w = gl2_pair(f, a, b);
  w.notes.push_back("preconditions bypassed");
  return w;
}

WitnessPair witness_sp2(FieldSpec f, const FieldElement& a) {
  const FieldElement aa = a.in(f);
  require_outside_prime_field(aa, "witness_sp2");
  require(is_square(aa), "witness_sp2: a must be a square (extend the field)");
  const GroupSpec g = make_group(Family::Sp, 2, f);
  return swap_pair(g, unipotent2(f, FieldElement::one(f)), unipotent2(f, aa),
                   "base:sp2-unipotent-swap(a=" + aa.to_string() + ")");
}

WitnessPair witness_u4(FieldSpec f, std::uint64_t base_q, const FieldElement& a) {
  check_unitary_level(f, base_q);
  const FieldElement aa = a.in(f);
  require_outside_prime_field(aa, "witness_u4");
  require(!aa.pow(static_cast<std::int64_t>(base_q) + 1).is_one(),
          "witness_u4: a^(q+1) = 1 makes the pair globally conjugate; pick a of norm != 1");
  return u4_pair(f, base_q, aa);
}

WitnessPair witness_u4(FieldSpec f, std::uint64_t base_q, const FieldElement& a, Unchecked) {
  check_unitary_level(f, base_q);
  WitnessPair w = u4_pair(f, base_q, a);
  w.notes.push_back("preconditions bypassed");
  return w;
}

WitnessPair witness_o5(FieldSpec f, const FieldElement& a) {
  const FieldElement aa = a.in(f);
  require_outside_prime_field(aa, "witness_o5");
  const GroupSpec g = make_group(Family::Oodd, 5, f, FormKind::OrthO5Variant);
  return swap_pair(g, orth_block(f, FieldElement::one(f), true), orth_block(f, aa, true),
                   "base:o5-unipotent-swap(a=" + aa.to_string() + ")");
}

WitnessPair witness_o4(FieldSpec f, const FieldElement& a) {
  const FieldElement aa = a.in(f);
  require_outside_prime_field(aa, "witness_o4");
  const GroupSpec g = make_group(Family::Oeven, 4, f, FormKind::OrthO4Variant);
  return swap_pair(g, orth_block(f, FieldElement::one(f), false), orth_block(f, aa, false),
                   "base:o4-unipotent-swap(a=" + aa.to_string() + ")");
}

namespace {

std::uint64_t element_order(const Matrix& a, std::uint64_t bound) {
  Matrix m = a;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (is_identity(m)) return k;
    m = m * a;
  }
  throw std::invalid_argument("lift: element order exceeds " + std::to_string(bound));
}

}  // namespace

WitnessPair lift_via_centralizer(const WitnessPair& w, const Matrix& a,
                                 const std::function<Matrix(const Matrix&)>& embedding, const GroupSpec& g,
                                 const std::string& tag) {
  validate(w);
  if (const auto mem = membership(g, a); !mem) throw std::invalid_argument("lift: a not in " + g.label() + ": " + mem.reason);
  const std::uint64_t m = element_order(a, 1'000'000);
  WitnessPair out;
  out.provenance = w.provenance;
  out.notes = w.notes;
  for (auto [src, dst] : {std::pair{&w.phi1, &out.phi1}, std::pair{&w.phi2, &out.phi2}}) {
    dst->source = src->source;
    dst->source.moduli.push_back(m);
    dst->target = g;
    for (std::size_t i = 0; i < src->images.size(); ++i) {
      const Matrix e = embedding(src->images[i]);
      if (const auto mem = membership(g, e); !mem)
        throw std::invalid_argument("lift: embedded image not in " + g.label() + ": " + mem.reason);
      if (!equal(e * a, a * e)) throw std::invalid_argument("lift: embedded image does not commute with a");
      for (std::size_t j = 0; j < src->images.size(); ++j)
        if (!equal(embedding(src->images[i] * src->images[j]), e * embedding(src->images[j])))
          throw std::invalid_argument("lift: embedding is not multiplicative on the generators");
      dst->images.push_back(e);
    }
    dst->images.push_back(a);
  }
  out.provenance.push_back(tag);
  validate(out);
  return out;
}

WitnessPair sl_witness_via_det_twist(const WitnessPair& w) {
  validate(w);
  const GroupSpec& src = w.phi1.target;
  if (src.family != Family::GL) throw std::invalid_argument("det twist: expects a GL pair");
  const std::uint64_t qm1 = src.field.q() - 1;
  if (std::gcd<std::uint64_t>(static_cast<std::uint64_t>(src.n), qm1) != 1)
    throw std::invalid_argument("det twist: gcd(" + std::to_string(src.n) + ", " + std::to_string(qm1) + ") != 1");
  WitnessPair out = w;
  out.element.reset();
  out.global.reset();
  const GroupSpec sl = make_group(Family::SL, src.n, src.field);
  for (Hom* h : {&out.phi1, &out.phi2}) {
    h->target = sl;
    for (auto& m : h->images) m = power_map_inverse(det(m).inverse(), src.n) * m;
  }
  out.provenance.push_back("twist:det-power-map(n=" + std::to_string(src.n) + ")");
  validate(out);
  return out;
}

WitnessPair transport(const WitnessPair& w, const Matrix& p, const GroupSpec& to, const std::string& tag) {
  const auto pinv = inverse(p);
  if (!pinv) throw std::invalid_argument("transport: singular matrix");
  WitnessPair out = w;
  out.element.reset();
  out.global.reset();
  for (Hom* h : {&out.phi1, &out.phi2}) {
    h->target = to;
    for (auto& m : h->images) m = p * m * *pinv;
  }
  out.provenance.push_back(tag);
  validate(out);
  return out;
}

FieldElement default_parameter(Family family, FieldSpec f, std::uint64_t base_q) {
  if (family != Family::U && family != Family::Sp && family != Family::SL) return FieldElement::generator(f);
  for (const auto& x : all_elements(f)) {
    if (x.is_zero() || x.in_prime_field()) continue;
    if ((family == Family::Sp || family == Family::SL) && !is_square(x)) continue;
    if (family == Family::U && x.pow(static_cast<std::int64_t>(base_q) + 1).is_one()) continue;
    return x;
  }
  throw std::invalid_argument("no admissible witness parameter in F_" + std::to_string(f.q()) +
                              "; use a larger field");
}

namespace {

[[noreturn]] void unsupported(Family family, int n, const std::string& why) {
  throw UnsupportedWitness("no witness for " + to_string(family) + " with n = " + std::to_string(n) + ": " + why);
}

Matrix diag_of(const std::vector<FieldElement>& d) {
  Matrix m = zeros(d.front().field(), static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// diag(1, A, 1)
Matrix pad_outer(const Matrix& a) {
  const FieldSpec f = field_of(a);
  return block_diag({identity(f, 1), a, identity(f, 1)});
}

std::string elems_label(const Matrix& m) {
  std::string s = "diag(";
  for (int i = 0; i < m.rows(); ++i) s += (i ? "," : "") + m(i, i).to_string();
  return s + ")";
}

// First lambda in element order with lambda^2 != 1 (so lambda, 1, lambda^-1
// are distinct).
FieldElement split_lambda(FieldSpec f) {
  for (const auto& x : all_elements(f))
    if (!x.is_zero() && !(x * x).is_one()) return x;
  throw std::invalid_argument("field too small for a regular torus element");
}

WitnessPair gl_chain(int n, FieldSpec f, const WitnessParams& prm) {
  const FieldElement a = prm.a ? prm.a->in(f) : FieldElement::one(f);
  const FieldElement b = prm.b ? prm.b->in(f) : FieldElement::generator(f);
  WitnessPair w = witness_gl2(f, a, b);
  const FieldElement mone = FieldElement::from_int(f, -1);
  for (int k = 3; k <= n; ++k) {
    std::vector<FieldElement> d(k, FieldElement::one(f));
    d.back() = mone;
    const Matrix el = diag_of(d);
    w = lift_via_centralizer(
        w, el, [&](const Matrix& x) { return block_diag({x, identity(f, 1)}); }, make_group(Family::GL, k, f),
        "lift:centralizer(a=" + elems_label(el) + ")");
  }
  return w;
}

}  // namespace

WitnessPair construct_witness(Family family, int n, FieldSpec f, const WitnessParams& prm) {
  if (f.k() < 2) unsupported(family, n, "the base pairs need an element outside the prime field (k >= 2)");
  const FieldElement one = FieldElement::one(f);
  const FieldElement mone = FieldElement::from_int(f, -1);
  switch (family) {
    case Family::GL:
      if (n < 2) unsupported(family, n, "GL(1) is abelian");
      return gl_chain(n, f, prm);

    case Family::SL: {
      if (n < 2) unsupported(family, n, "SL(1) is trivial");
      if (n == 2) {
        const FieldElement a = prm.a ? prm.a->in(f) : default_parameter(Family::SL, f);
        WitnessPair sp = witness_sp2(f, a);
        WitnessPair w = transport(sp, identity(f, 2), make_group(Family::SL, 2, f), "transport:Sp(2)=SL(2)");
        return w;
      }
      if (n % 2 == 1) {
        const WitnessPair base = gl_chain(n - 1, f, prm);
        std::vector<FieldElement> d(n, mone);
        d.back() = one;
        const Matrix el = diag_of(d);
        return lift_via_centralizer(
            base, el,
            [&](const Matrix& x) { return block_diag({x, scalar_matrix(det(x).inverse(), 1)}); },
            make_group(Family::SL, n, f), "lift:centralizer(a=" + elems_label(el) + ",A->diag(A,det A^-1))");
      }
      const WitnessPair base = gl_chain(n - 2, f, prm);
      const FieldElement lam = split_lambda(f);
      std::vector<FieldElement> d(n, one);
      d[0] = lam;
      d[1] = lam.inverse();
      const Matrix el = diag_of(d);
      return lift_via_centralizer(
          base, el,
          [&](const Matrix& x) { return block_diag({scalar_matrix(det(x).inverse(), 1), identity(f, 1), x}); },
          make_group(Family::SL, n, f), "lift:centralizer(a=" + elems_label(el) + ",A->diag(det A^-1,1,A))");
    }

    case Family::U: {
      if (n < 4) unsupported(family, n, "the unitary construction starts at U(4)");
      if (f.k() % 2 != 0) unsupported(family, n, "U needs a field F_{q^2}");
      std::uint64_t base_q = prm.base_q;
      if (base_q == 0) {
        base_q = 1;
        for (int i = 0; i < f.k() / 2; ++i) base_q *= f.p();
      }
      const FieldElement a = prm.a ? prm.a->in(f) : default_parameter(Family::U, f, base_q);
      WitnessPair w = witness_u4(f, base_q, a);
      int size = 4;
      if (n % 2 == 1) {
        const Matrix el = diag_of({one, one, mone, one, one});
        w = lift_via_centralizer(
            w, el,
            [&](const Matrix& x) {
              Matrix y = identity(f, 5);
              const int idx[4] = {0, 1, 3, 4};
              for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) y(idx[r], idx[c]) = x(r, c);
              return y;
            },
            make_group(Family::U, 5, f, FormKind::HermAntidiag, std::nullopt, base_q),
            "lift:centralizer(a=" + elems_label(el) + ",middle)");
        size = 5;
      }
      while (size < n) {
        size += 2;
        std::vector<FieldElement> d(size, one);
        d.front() = d.back() = mone;
        const Matrix el = diag_of(d);
        w = lift_via_centralizer(w, el, pad_outer,
                                 make_group(Family::U, size, f, FormKind::HermAntidiag, std::nullopt, base_q),
                                 "lift:centralizer(a=" + elems_label(el) + ")");
      }
      return w;
    }

    case Family::Sp: {
      if (n < 2 || n % 2) unsupported(family, n, "Sp needs an even matrix size");
      const FieldElement a = prm.a ? prm.a->in(f) : default_parameter(Family::Sp, f);
      WitnessPair w = witness_sp2(f, a);
      const FieldElement lam = split_lambda(f);
      for (int size = 4; size <= n; size += 2) {
        std::vector<FieldElement> d(size, one);
        d.front() = lam;
        d.back() = lam.inverse();
        const Matrix el = diag_of(d);
        w = lift_via_centralizer(w, el, pad_outer, make_group(Family::Sp, size, f),
                                 "lift:centralizer(a=" + elems_label(el) + ")");
      }
      return w;
    }

    case Family::Oodd:
    case Family::Oeven: {
      const bool odd = family == Family::Oodd;
      if (odd && (n < 5 || n % 2 == 0)) unsupported(family, n, "odd orthogonal witnesses start at O(5)");
      if (!odd && (n < 4 || n % 2 == 1)) unsupported(family, n, "even orthogonal witnesses start at O(4)");
      const FieldElement a = prm.a ? prm.a->in(f) : default_parameter(family, f);
      WitnessPair w = odd ? witness_o5(f, a) : witness_o4(f, a);
      // A coordinate swap carries the block form to the antidiagonal one.
      const int size0 = odd ? 5 : 4;
      Matrix perm = identity(f, size0);
      const int i = odd ? 3 : 2, j = odd ? 4 : 3;
      perm(i, i) = perm(j, j) = FieldElement::zero(f);
      perm(i, j) = perm(j, i) = one;
      const GroupSpec std_g = make_group(family, size0, f);
      w = transport(w, perm, std_g,
                    std::string("transport:") + (odd ? "o5-block-variant" : "o4-block-variant") + "->" +
                        std_g.form_name);
      for (int size = size0 + 2; size <= n; size += 2) {
        std::vector<FieldElement> d(size, one);
        d.front() = d.back() = mone;
        const Matrix el = diag_of(d);
        w = lift_via_centralizer(w, el, pad_outer, make_group(family, size, f),
                                 "lift:centralizer(a=" + elems_label(el) + ")");
      }
      return w;
    }
  }
  unsupported(family, n, "unknown family");
}

nlohmann::json to_json(const ElementResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["method"] = r.method;
  nlohmann::json certs = nlohmann::json::object();
  for (const auto& [k, v] : r.certificates) certs[k] = to_json(v);
  j["certificates"] = certs;
  if (r.at) j["at"] = tuple_label(*r.at);
  j["work"] = r.work;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json to_json(const GlobalResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["level"] = r.level;
  j["dimension"] = r.dimension;
  j["conjugator"] = r.conjugator ? to_json(*r.conjugator) : nlohmann::json(nullptr);
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.evidence)
    ev.push_back({{"method", e.method}, {"outcome", to_string(e.outcome)}, {"work", e.work}, {"note", e.note}});
  j["evidence"] = ev;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json to_json(const WitnessPair& w) {
  nlohmann::json j;
  j["target"] = to_json(w.phi1.target);
  j["source"] = w.phi1.source.moduli;
  for (auto [name, h] : {std::pair{"phi1", &w.phi1}, std::pair{"phi2", &w.phi2}}) {
    nlohmann::json imgs = nlohmann::json::array();
    for (const auto& m : h->images) imgs.push_back(to_json(m));
    j[name] = imgs;
  }
  j["element_conjugate"] = w.element ? to_json(*w.element) : nlohmann::json(nullptr);
  j["global"] = w.global ? to_json(*w.global) : nlohmann::json(nullptr);
  j["provenance"] = w.provenance;
  j["notes"] = w.notes;
  return j;
}

}  // namespace cgw
