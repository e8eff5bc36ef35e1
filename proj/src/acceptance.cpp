#include "cgw/acceptance.hpp"

#include "cgw/class_data.hpp"
#include "cgw/witnesses.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

namespace cgw {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Skipped:
      return "SKIPPED";
    case Verdict::Info:
      return "INFO";
  }
  return "?";
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << std::left << std::setw(8) << to_string(r.verdict) << std::setw(16) << r.id << r.title << " ["
     << std::fixed << std::setprecision(2) << r.seconds << "s]";
  if (!r.detail.empty()) os << " : " << r.detail;
  return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.primary && r.verdict == Verdict::Fail) return false;
  return true;
}

namespace {

// Thrown to end a criterion with a verdict other than Pass.
struct Outcome {
  Verdict verdict;
  std::string detail;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Outcome{Verdict::Fail, what};
}

void skip_unless(bool decided, const std::string& what) {
  if (!decided) throw Outcome{Verdict::Skipped, what};
}

struct Ctx {
  const AcceptanceConfig& cfg;
  FieldSpec f9 = make_field(3, 2);
  FieldElement t = FieldElement::generator(f9);
  FieldElement one = FieldElement::one(f9);
};

void corrupt(GroupSpec& g) {
  if (!g.form) return;
  (*g.form)(0, 0) += FieldElement::one(g.field);
}

void maybe_corrupt(const Ctx& c, WitnessPair& w) {
  if (!c.cfg.corrupt_forms) return;
  corrupt(w.phi1.target);
  corrupt(w.phi2.target);
}

GroupSpec maybe_corrupt(const Ctx& c, GroupSpec g) {
  if (c.cfg.corrupt_forms) corrupt(g);
  return g;
}

// Direct checks on the generator images, without validate() so that a
// broken form reports as a failed criterion.
void check_images(const WitnessPair& w, std::uint64_t expected_order) {
  const GroupSpec& g = w.phi1.target;
  for (const Hom* h : {&w.phi1, &w.phi2})
    for (std::size_t i = 0; i < h->images.size(); ++i) {
      const Matrix& m = h->images[i];
      const auto mem = membership(g, m);
      check(mem.ok, "image " + std::to_string(i) + " not in " + g.label() + ": " + mem.reason);
      check(!is_identity(m) && is_identity(power(m, static_cast<std::int64_t>(expected_order))),
            "image " + std::to_string(i) + " does not have order " + std::to_string(expected_order));
      for (const auto& other : h->images) check(equal(m * other, other * m), "images do not commute");
    }
}

// Re-asserts every stored certificate against the pair itself.
void check_certificates(const WitnessPair& w, const ElementResult& e) {
  const auto elems = w.phi1.source.elements();
  check(e.certificates.size() == elems.size(),
        std::to_string(e.certificates.size()) + " certificates for " + std::to_string(elems.size()) + " elements");
  for (const auto& h : elems) {
    const Matrix& c = e.certificates.at(tuple_label(h));
    check(membership(w.phi1.target, c).ok, "certificate for " + tuple_label(h) + " outside the group");
    check(equal(c * w.phi1(h), w.phi2(h) * c), "certificate for " + tuple_label(h) + " does not conjugate");
  }
}

void require_element_verified(const WitnessPair& w, const ElementResult& e) {
  skip_unless(e.status != ElementStatus::Inconclusive, "element conjugacy inconclusive at " + e.note);
  check(e.status == ElementStatus::Verified, "element conjugacy fails at " + e.note);
  check_certificates(w, e);
}

const GlobalEvidence* evidence(const GlobalResult& g, const std::string& method) {
  for (const auto& e : g.evidence)
    if (e.method == method) return &e;
  return nullptr;
}

std::string describe(const GlobalResult& g) {
  std::string s = to_string(g.status) + " at " + g.level + " (dim " + std::to_string(g.dimension);
  if (const auto* e = evidence(g, "span-search")) s += ", search " + to_string(e->outcome);
  return s + ")";
}

void require_not_globally_conjugate(const GlobalResult& g) {
  check(g.status != GlobalStatus::Found, "global conjugator found: " + describe(g));
  skip_unless(g.status != GlobalStatus::Unknown, "global decider undecided: " + describe(g));
}

using Body = std::function<std::string(const Ctx&)>;

std::string crit_gl2(const Ctx& c) {
  WitnessPair w = witness_gl2(c.f9, c.one, c.t);
  check_images(w, 3);
  const auto e = element_conjugate(w, c.cfg.opts);
  require_element_verified(w, e);
  check(e.certificates.size() == 9, "expected 9 certificates");
  const auto g = globally_conjugate(w, c.cfg.opts);
  check(g.status == GlobalStatus::Symbolic, "global decider: " + describe(g));
  const auto group = generate(w.phi1.target, c.cfg.opts.budget, c.cfg.opts.seed);
  check(group.size() == 5760, "|GL(2,9)| = " + std::to_string(group.size()));
  const auto ex = global_by_enumeration(w, group);
  check(ex.outcome == GlobalStatus::Exhausted, "enumeration found a global conjugator");
  return "9/9 certificates; symbolic; 5760 elements scanned, none conjugates";
}

std::string crit_sp2(const Ctx& c) {
  WitnessPair w = witness_sp2(c.f9, c.t);
  maybe_corrupt(c, w);
  check_images(w, 3);
  const auto group = generate(w.phi1.target, c.cfg.opts.budget, c.cfg.opts.seed);
  check(group.size() == 720, "|Sp(2,9)| = " + std::to_string(group.size()));
  const auto e = element_conjugate_by_enumeration(w, group);
  require_element_verified(w, e);
  const auto ex = global_by_enumeration(w, group);
  check(ex.outcome == GlobalStatus::Exhausted, "enumeration found a global conjugator");
  return "|Sp(2,9)| = 720; 9/9 elements conjugate; no global conjugator among 720";
}

std::string crit_u4(const Ctx& c) {
  // a = t exactly as stated, so the norm precondition is bypassed.
  WitnessPair w = witness_u4(c.f9, 3, c.t, Unchecked{});
  maybe_corrupt(c, w);
  check_images(w, 3);
  for (const auto& h : w.phi1.source.elements())
    check(elementary_divisors(w.phi1(h)).entries == elementary_divisors(w.phi2(h)).entries,
          "GL invariants differ at " + tuple_label(h));
  const auto e = element_conjugate(w, c.cfg.opts);
  require_element_verified(w, e);
  const auto g = globally_conjugate(w, c.cfg.opts);
  const auto s = stability_check(w, c.cfg.opts);
  std::string detail = "9/9 GL-invariant matches; global " + describe(g) + "; after extension " + describe(s);
  if (g.status == GlobalStatus::Found)
    detail += "; t^(q+1) = " + c.t.pow(4).to_string() + ", so the swapped pair is conjugate by the found element";
  check(g.status != GlobalStatus::Found && s.status != GlobalStatus::Found, detail);
  skip_unless(g.status != GlobalStatus::Unknown || g.dimension >= 0, detail);
  return detail;
}

std::string crit_u4_norm(const Ctx& c) {
  const FieldElement a = default_parameter(Family::U, c.f9, 3);
  WitnessPair w = witness_u4(c.f9, 3, a);
  maybe_corrupt(c, w);
  check_images(w, 3);
  const auto e = element_conjugate(w, c.cfg.opts);
  require_element_verified(w, e);
  const auto g = globally_conjugate(w, c.cfg.opts);
  const auto s = stability_check(w, c.cfg.opts);
  require_not_globally_conjugate(g);
  require_not_globally_conjugate(s);
  return "a = " + a.to_string() + ": 9/9 certificates; global " + describe(g) + "; after extension " + describe(s);
}

std::string crit_orth(const Ctx& c) {
  std::string detail;
  for (bool five : {true, false}) {
    const auto start = std::chrono::steady_clock::now();
    WitnessPair w = five ? witness_o5(c.f9, c.t) : witness_o4(c.f9, c.t);
    maybe_corrupt(c, w);
    check_images(w, 3);
    const auto e = element_conjugate(w, c.cfg.opts);
    require_element_verified(w, e);
    const auto g = globally_conjugate(w, c.cfg.opts);
    check(g.status != GlobalStatus::Found, w.phi1.target.label() + ": global conjugator found");
    const auto* search = evidence(g, "span-search");
    check(search && (search->outcome == GlobalStatus::Exhausted || search->outcome == GlobalStatus::Unknown),
          w.phi1.target.label() + ": span search " + (search ? to_string(search->outcome) : std::string("missing")));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(secs < 120, w.phi1.target.label() + " took " + std::to_string(secs) + "s");
    if (!detail.empty()) detail += "; ";
    detail += w.phi1.target.label() + ": 9/9 certificates, global " + describe(g);
  }
  return detail;
}

std::string crit_lifts(const Ctx& c) {
  std::string detail;
  for (auto [fam, n] : {std::pair{Family::GL, 4}, std::pair{Family::SL, 5}}) {
    const WitnessPair w = construct_witness(fam, n, c.f9);
    const auto e = element_conjugate(w, c.cfg.opts);
    require_element_verified(w, e);
    const auto g = globally_conjugate(w, c.cfg.opts);
    require_not_globally_conjugate(g);
    if (fam == Family::GL)
      check(w.phi1.source.moduli == std::vector<std::uint64_t>{3, 3, 2, 2}, "GL(4) source is not (3,3,2,2)");
    if (!detail.empty()) detail += "; ";
    detail += w.phi1.target.label() + ": " + std::to_string(e.certificates.size()) + " certificates, global " +
              describe(g);
  }
  return detail;
}

std::string crit_twist(const Ctx& c) {
  const WitnessPair base = construct_witness(Family::GL, 3, c.f9);
  const auto e0 = element_conjugate(base, c.cfg.opts);
  require_element_verified(base, e0);
  const auto g0 = globally_conjugate(base, c.cfg.opts);
  const WitnessPair tw = sl_witness_via_det_twist(base);
  for (const Hom* h : {&tw.phi1, &tw.phi2})
    for (const auto& m : h->images) check(det(m).is_one(), "twisted image with det " + det(m).to_string());
  for (const auto& h : tw.phi1.source.elements()) {
    const Matrix& cert = e0.certificates.at(tuple_label(h));
    check(equal(cert * tw.phi1(h), tw.phi2(h) * cert), "original conjugator fails on twisted pair at " + tuple_label(h));
  }
  const auto e1 = element_conjugate(tw, c.cfg.opts);
  require_element_verified(tw, e1);
  const auto g1 = globally_conjugate(tw, c.cfg.opts);
  require_not_globally_conjugate(g0);
  require_not_globally_conjugate(g1);
  check(g0.status == g1.status, "global outcome changed: " + describe(g0) + " vs " + describe(g1));
  return "all twisted dets 1; GL(3) certificates reused; SL(3) " + std::to_string(e1.certificates.size()) +
         " certificates; global " + describe(g1);
}

std::string crit_classes(const Ctx& c) {
  std::string detail;
  for (std::uint32_t p : {3u, 5u}) {
    const FieldSpec f = make_field(p, 1);
    const auto fns = enumerate_class_functions(GroupKind::GL, 2, f);
    const auto brute = conjugacy_classes(make_group(Family::GL, 2, f), c.cfg.opts.budget, c.cfg.opts.seed);
    check(fns.size() == brute.sizes.size(), "GL(2," + std::to_string(p) + "): " + std::to_string(fns.size()) +
                                                " class functions vs " + std::to_string(brute.sizes.size()) +
                                                " classes");
    if (!detail.empty()) detail += "; ";
    detail += "GL(2," + std::to_string(p) + "): " + std::to_string(fns.size()) + " = " +
              std::to_string(brute.sizes.size());
  }
  return detail;
}

std::string crit_wall(const Ctx& c) {
  const FieldSpec f3 = make_field(3, 1);
  const Poly x_minus_1 = Poly::linear(FieldElement::one(f3));
  std::string detail;
  struct Case {
    GroupSpec g;
    bool symplectic;
  };
  for (const Case& k : {Case{make_group(Family::Sp, 2, f3), true}, Case{make_group(Family::Sp, 4, f3), true},
                        Case{make_group(Family::Oodd, 3, f3), false}}) {
    const GroupSpec g = maybe_corrupt(c, k.g);
    const auto elems = generate(g, c.cfg.opts.budget, c.cfg.opts.seed);
    std::uint64_t unipotent = 0;
    for (const auto& u : elems) {
      const auto cf = elementary_divisors(u);
      if (cf.entries.size() != 1 || cf.entries.begin()->first != x_minus_1) continue;
      ++unipotent;
      const Partition& lam = cf.entries.begin()->second;
      check(k.symplectic ? is_symplectic_partition(lam) : is_orthogonal_partition(lam),
            g.label() + ": unipotent with Jordan type " + lam.to_string());
    }
    if (!detail.empty()) detail += "; ";
    detail += g.label() + ": " + std::to_string(elems.size()) + " elements, " + std::to_string(unipotent) +
              " unipotent";
  }
  return detail;
}

// Root-based oracle for small degrees.
std::vector<FieldElement> roots(const Poly& f) {
  std::vector<FieldElement> r;
  for (const auto& x : all_elements(f.field()))
    if (f.eval(x).is_zero()) r.push_back(x);
  return r;
}

std::vector<Poly> monic_with_unit_constant(FieldSpec f, int max_degree) {
  std::vector<Poly> out;
  const auto elems = all_elements(f);
  for (int d = 0; d <= max_degree; ++d) {
    // all coefficient vectors of length d, then append the leading 1
    std::vector<std::vector<FieldElement>> tails{{}};
    for (int i = 0; i < d; ++i) {
      std::vector<std::vector<FieldElement>> next;
      for (const auto& t : tails)
        for (const auto& e : elems) {
          auto v = t;
          v.push_back(e);
          next.push_back(v);
        }
      tails = std::move(next);
    }
    for (auto v : tails) {
      v.push_back(FieldElement::one(f));
      if (v.front().is_zero()) continue;
      out.emplace_back(f, v);
    }
  }
  return out;
}

std::string crit_milnor(const Ctx&) {
  std::string detail;
  for (std::uint32_t p : {3u, 5u}) {
    const FieldSpec f = make_field(p, 1);
    int total = 0, star = 0, t1 = 0, t2 = 0, t3 = 0;
    for (const auto& poly : monic_with_unit_constant(f, 2)) {
      ++total;
      const Poly d = dual(poly);
      check(d.is_monic() && d.degree() == poly.degree(), "dual of " + poly.to_string() + " malformed");
      check(dual(d) == poly, "dual not involutive on " + poly.to_string());
      const auto rs = roots(poly);
      // oracle: self-reciprocal iff the root multiset is closed under inversion
      bool self_recip = true;
      if (poly.degree() == 1) self_recip = (rs[0] * rs[0]).is_one();
      if (poly.degree() == 2 && !rs.empty()) {
        const FieldElement r1 = rs[0], r2 = poly.coeff(0) / r1;  // product of roots = c0
        self_recip = (r1 * r2).is_one() || ((r1 * r1).is_one() && (r2 * r2).is_one());
      }
      if (poly.degree() == 2 && rs.empty()) self_recip = poly.coeff(0).is_one();
      check(is_self_reciprocal(poly) == self_recip, "self-reciprocity wrong on " + poly.to_string());
      bool star_oracle = false;
      if (self_recip && poly.degree() == 1) star_oracle = true;
      if (self_recip && poly.degree() == 2) {
        bool has_unit_root = false;
        for (const auto& r : rs) has_unit_root |= (r * r).is_one();
        star_oracle = !has_unit_root;
      }
      check(is_star_irreducible(poly) == star_oracle, "*-irreducibility wrong on " + poly.to_string());
      if (!star_oracle) continue;
      ++star;
      const MilnorClass m = milnor_type(poly);
      const MilnorType expect =
          poly.degree() == 1 ? MilnorType::Type3 : (rs.empty() ? MilnorType::Type1 : MilnorType::Type2);
      check(m.type == expect, "Milnor type of " + poly.to_string() + " is " + to_string(m.type));
      if (m.type == MilnorType::Type2) check(m.g && *m.g * dual(*m.g) == poly, "Type 2 factor wrong");
      (m.type == MilnorType::Type1 ? t1 : m.type == MilnorType::Type2 ? t2 : t3)++;
    }
    // twisted dual over F_{p^2}
    const FieldSpec f2 = make_field(p, 2);
    int twisted = 0;
    for (const auto& poly : monic_with_unit_constant(f2, 2)) {
      const Poly td = twisted_dual(poly, p);
      check(td.is_monic() && td.degree() == poly.degree(), "twisted dual malformed");
      check(twisted_dual(td, p) == poly, "twisted dual not involutive on " + poly.to_string());
      ++twisted;
    }
    if (!detail.empty()) detail += "; ";
    detail += "F_" + std::to_string(p) + ": " + std::to_string(total) + " polys, " + std::to_string(star) +
              " *-irreducible all classified (" + std::to_string(t1) + "/" + std::to_string(t2) + "/" +
              std::to_string(t3) + "), " + std::to_string(twisted) + " twisted duals over F_" +
              std::to_string(p * p);
  }
  return detail;
}

std::string crit_negative(const Ctx& c) {
  const FieldSpec f = make_field(5, 2);
  const WitnessPair w =
      witness_gl2(f, FieldElement::one(f), FieldElement::from_int(f, 2), Unchecked{});
  const auto e = element_conjugate(w, c.cfg.opts);
  check(e.status == ElementStatus::Fails, "decider returned " + to_string(e.status));
  const Matrix x = w.phi1(*e.at), y = w.phi2(*e.at);
  check(is_identity(x) != is_identity(y), "failing element is not an identity/non-identity split");
  return "b/a = 2 in F_5: fails at " + tuple_label(*e.at);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  const Ctx ctx{cfg};
  struct Entry {
    std::string id, title;
    double limit;
    Body body;
    bool primary = true;
  };
  const std::vector<Entry> entries{
      {"gl2-base", "GL(2) base witness over F_9, a=1, b=t", 5, crit_gl2},
      {"sp2-base", "Sp(2) base witness over F_9, a=t, full enumeration", 5, crit_sp2},
      {"u4-base", "U(4) witness over F_9, a=t", 60, crit_u4},
      {"orth-base", "O(5) and O(4) witnesses over F_9, a=t", 240, crit_orth},
      {"lift-chain", "construct_witness GL(4) and SL(5) over F_9", 120, crit_lifts},
      {"det-twist", "SL(3, F_9) witness by det twist of GL(3)", 120, crit_twist},
      {"class-count", "class functions vs brute-force classes, GL(2,3) and GL(2,5)", 30, crit_classes},
      {"wall-unipotent", "unipotent Jordan types in Sp(2,3), Sp(4,3), O(3,3)", 120, crit_wall},
      {"dual-milnor", "dual involutions and Milnor types, degree <= 2 over F_3, F_5", 120, crit_milnor},
      {"negative-ctl", "GL(2) pair with b/a in the prime field fails", 120, crit_negative},
      {"u4-norm", "U(4) witness with a^(q+1) != 1 (informational)", 60, crit_u4_norm, false},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    if (!cfg.filter.empty() && e.id.find(cfg.filter) == std::string::npos) continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    r.primary = e.primary;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = e.body(ctx);
      r.verdict = Verdict::Pass;
    } catch (const Outcome& o) {
      r.verdict = o.verdict;
      r.detail = o.detail;
    } catch (const BudgetExceeded& ex) {
      r.verdict = Verdict::Skipped;
      r.detail = std::string("budget: ") + ex.what();
    } catch (const std::exception& ex) {
      r.verdict = Verdict::Fail;
      r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.verdict == Verdict::Pass && r.seconds >= e.limit) {
      r.verdict = Verdict::Fail;
      r.detail += "; over the " + std::to_string(static_cast<int>(e.limit)) + "s limit";
    }
    if (!e.primary) {
      if (r.verdict != Verdict::Pass) r.detail = to_string(r.verdict) + ": " + r.detail;
      r.verdict = Verdict::Info;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cgw
