#include "cgw/groups.hpp"

#include "cgw/form_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace cgw {

std::string to_string(Status s) {
  switch (s) {
    case Status::Found:
      return "found";
    case Status::NotFound:
      return "not-found";
    case Status::Unknown:
      return "unknown";
  }
  return "?";
}

SearchOptions default_search_options() {
  SearchOptions o;
  if (const char* b = std::getenv("CGW_BUDGET")) o.budget = std::strtoull(b, nullptr, 10);
  if (const char* s = std::getenv("CGW_SEED")) o.seed = std::strtoull(s, nullptr, 10);
  if (o.budget == 0) o.budget = 1;
  return o;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::GL:
      return "GL";
    case Family::SL:
      return "SL";
    case Family::U:
      return "U";
    case Family::Sp:
      return "Sp";
    case Family::Oodd:
      return "Oodd";
    case Family::Oeven:
      return "Oeven";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  for (Family f : {Family::GL, Family::SL, Family::U, Family::Sp, Family::Oodd, Family::Oeven})
    if (s == to_string(f)) return f;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

bool has_form(Family f) { return f != Family::GL && f != Family::SL; }

std::string GroupSpec::label() const {
  std::string fam = to_string(family);
  if (family == Family::Oodd || family == Family::Oeven) fam = "O";
  return fam + "(" + std::to_string(n) + ", F_" + std::to_string(field.q()) + ")";
}

namespace {

FormKind default_preset(Family f) {
  switch (f) {
    case Family::U:
      return FormKind::HermAntidiag;
    case Family::Sp:
      return FormKind::Symplectic;
    case Family::Oodd:
      return FormKind::OrthOdd;
    case Family::Oeven:
      return FormKind::OrthEven;
    default:
      throw std::invalid_argument("family has no form");
  }
}

FieldElement first_nonsquare(FieldSpec f) {
  for (const auto& x : all_elements(f))
    if (!x.is_zero() && !is_square(x)) return x;
  throw std::logic_error("no nonsquare in an odd-order field");
}

// (x, y) -> t(sigma(x)) J y for column vectors.
FieldElement pairing(const GroupSpec& g, const Matrix& x, const Matrix& y) {
  return (form_adjoint_transpose(g, x) * *g.form * y)(0, 0);
}

std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e, bool& overflow) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= b;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      overflow = true;
      return 0;
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

GroupSpec make_group(Family family, int n, FieldSpec field, std::uint64_t base_q) {
  if (!has_form(family)) {
    GroupSpec g;
    g.family = family;
    g.n = n;
    g.field = field;
    validate(g);
    return g;
  }
  return make_group(family, n, field, default_preset(family), std::nullopt, base_q);
}

GroupSpec make_group(Family family, int n, FieldSpec field, FormKind preset, std::optional<FieldElement> alpha,
                     std::uint64_t base_q) {
  std::string name = to_string(preset);
  if (preset == FormKind::OrthOdd) name += "(" + (alpha ? alpha->in(field).to_string() : std::string("1")) + ")";
  return make_group_with_form(family, field, form_matrix(preset, n, field, alpha), base_q, name);
}

GroupSpec make_group_with_form(Family family, FieldSpec field, const Matrix& form, std::uint64_t base_q,
                               std::string name) {
  GroupSpec g;
  g.family = family;
  g.n = static_cast<int>(form.rows());
  g.field = field;
  g.base_q = family == Family::U ? base_q : 0;
  g.form = bind(form, field);
  g.form_name = std::move(name);
  validate(g);
  return g;
}

void validate(const GroupSpec& g) {
  if (!g.field.valid()) throw std::invalid_argument("group without a field");
  if (g.n < 1) throw std::invalid_argument("group size must be positive");
  if (!has_form(g.family)) {
    if (g.form) throw std::invalid_argument(to_string(g.family) + " takes no form");
    return;
  }
  if (!g.form) throw std::invalid_argument(to_string(g.family) + " needs a form");
  const Matrix& j = *g.form;
  if (j.rows() != g.n || j.cols() != g.n) throw std::invalid_argument("form size mismatch");
  if (field_of(j) != g.field) throw std::invalid_argument("form over a different field");
  if (det(j).is_zero()) throw std::invalid_argument("degenerate form");
  switch (g.family) {
    case Family::U:
      check_unitary_level(g.field, g.base_q);
      if (!equal(conj_transpose(j, g.base_q), j)) throw std::invalid_argument("form is not hermitian");
      break;
    case Family::Sp:
      if (!equal(transpose(j), -j)) throw std::invalid_argument("form is not antisymmetric");
      for (int i = 0; i < g.n; ++i)
        if (!j(i, i).is_zero()) throw std::invalid_argument("alternating form needs a zero diagonal");
      break;
    case Family::Oodd:
    case Family::Oeven:
      if (!equal(transpose(j), j)) throw std::invalid_argument("form is not symmetric");
      if ((g.family == Family::Oodd) != (g.n % 2 == 1)) throw std::invalid_argument("O parity does not match n");
      break;
    default:
      break;
  }
}

nlohmann::json to_json(const GroupSpec& g) {
  nlohmann::json j;
  j["family"] = to_string(g.family);
  j["n"] = g.n;
  j["field"] = g.field.to_string();
  if (g.family == Family::U) j["base_q"] = g.base_q;
  if (g.form) {
    j["form"] = g.form_name == "inline" ? to_json(*g.form) : nlohmann::json(g.form_name);
    j["form_matrix"] = to_json(*g.form);
  }
  return j;
}

GroupSpec group_from_json(const nlohmann::json& j) {
  const Family fam = parse_family(j.at("family").get<std::string>());
  const int n = j.at("n").get<int>();
  const FieldSpec f = FieldSpec::parse(j.at("field").get<std::string>());
  const std::uint64_t base_q = j.value("base_q", std::uint64_t{0});
  if (!has_form(fam) || !j.contains("form")) return make_group(fam, n, f, base_q);
  const auto& form = j.at("form");
  if (form.is_string()) {
    std::string s = form.get<std::string>();
    std::optional<FieldElement> alpha;
    if (auto open = s.find('('); open != std::string::npos) {
      const auto close = s.rfind(')');
      const std::string arg = s.substr(open + 1, close - open - 1);
      alpha = arg.starts_with("[") ? FieldElement::parse(f, arg) : FieldElement::from_int(f, std::stoll(arg));
      s = s.substr(0, open);
    }
    return make_group(fam, n, f, parse_form_kind(s), alpha, base_q);
  }
  Matrix m(static_cast<int>(form.size()), static_cast<int>(form.at(0).size()));
  for (std::size_t r = 0; r < form.size(); ++r)
    for (std::size_t c = 0; c < form[r].size(); ++c) m(r, c) = FieldElement::parse(f, form[r][c].get<std::string>());
  if (m.rows() != n) throw std::invalid_argument("inline form size does not match n");
  return make_group_with_form(fam, f, m, base_q);
}

Matrix form_adjoint_transpose(const GroupSpec& g, const Matrix& m) {
  return g.family == Family::U ? conj_transpose(m, g.base_q) : transpose(m);
}

Membership membership(const GroupSpec& g, const Matrix& m) {
  if (m.rows() != g.n || m.cols() != g.n)
    throw std::invalid_argument("membership: expected " + std::to_string(g.n) + "x" + std::to_string(g.n));
  if (field_of(m) != g.field) throw std::invalid_argument("membership: matrix over a different field");
  const FieldElement d = det(m);
  if (d.is_zero()) return {false, "not invertible"};
  if (g.family == Family::SL && !d.is_one()) return {false, "det = " + d.to_string() + " != 1"};
  if (has_form(g.family) && !equal(form_adjoint_transpose(g, m) * *g.form * m, *g.form))
    return {false, g.family == Family::U ? "t(sigma(A)) J A != J" : "t(A) J A != J"};
  return {};
}

std::optional<std::uint64_t> group_order(const GroupSpec& g) {
  bool of = false;
  unsigned __int128 r = 1;
  auto mul = [&](unsigned __int128 v) {
    r *= v;
    if (r > std::numeric_limits<std::uint64_t>::max()) of = true;
  };
  const std::uint64_t q = g.family == Family::U ? g.base_q : g.field.q();
  auto qp = [&](std::uint64_t e) { return pow_u64(q, e, of); };
  const int n = g.n;
  switch (g.family) {
    case Family::GL:
    case Family::SL:
      for (int i = 0; i < n && !of; ++i) mul(qp(n) - qp(i));
      if (g.family == Family::SL) r /= (q - 1);
      break;
    case Family::Sp: {
      const int m = n / 2;
      mul(qp(static_cast<std::uint64_t>(m) * m));
      for (int i = 1; i <= m && !of; ++i) mul(qp(2 * i) - 1);
      break;
    }
    case Family::Oodd: {
      const int m = n / 2;
      mul(2);
      mul(qp(static_cast<std::uint64_t>(m) * m));
      for (int i = 1; i <= m && !of; ++i) mul(qp(2 * i) - 1);
      break;
    }
    case Family::Oeven: {
      const int m = n / 2;
      // + type when (-1)^m det J is a square
      FieldElement disc = det(*g.form);
      if (m % 2) disc = -disc;
      const bool plus = is_square(disc);
      mul(2);
      mul(qp(static_cast<std::uint64_t>(m) * (m - 1)));
      mul(plus ? qp(m) - 1 : qp(m) + 1);
      for (int i = 1; i < m && !of; ++i) mul(qp(2 * i) - 1);
      break;
    }
    case Family::U:
      mul(qp(static_cast<std::uint64_t>(n) * (n - 1) / 2));
      for (int i = 1; i <= n && !of; ++i) mul(i % 2 ? qp(i) + 1 : qp(i) - 1);
      break;
  }
  if (of) return std::nullopt;
  return static_cast<std::uint64_t>(r);
}

namespace {

Matrix random_matrix(FieldSpec f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = FieldElement(f, pick(rng));
  return m;
}

Matrix random_vector(FieldSpec f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  Matrix v(n, 1);
  for (int i = 0; i < n; ++i) v(i, 0) = FieldElement(f, pick(rng));
  return v;
}

// Random element of the Lie algebra {S : t(sigma(S)) J + J S = 0}, as J^-1 H.
Matrix random_lie_element(const GroupSpec& g, std::mt19937_64& rng) {
  const FieldSpec f = g.field;
  Matrix r = random_matrix(f, g.n, rng);
  Matrix h;
  switch (g.family) {
    case Family::Sp:
      h = r + transpose(r);
      break;
    case Family::Oodd:
    case Family::Oeven:
      h = r - transpose(r);
      break;
    case Family::U:
      h = r - conj_transpose(r, g.base_q);
      break;
    default:
      throw std::logic_error("no Lie algebra element for this family");
  }
  return *inverse(*g.form) * h;
}

}  // namespace

std::vector<Matrix> standard_generators(const GroupSpec& g, std::uint64_t seed, int extra) {
  const FieldSpec f = g.field;
  const int n = g.n;
  std::vector<Matrix> gens;
  if (!has_form(g.family)) {
    const FieldElement gen = FieldElement::generator(f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        FieldElement e = FieldElement::one(f);
        for (int l = 0; l < f.k(); ++l, e *= gen) {
          Matrix t = identity(f, n);
          t(i, j) = e;
          gens.push_back(t);
        }
      }
    if (g.family == Family::GL) {
      Matrix d = identity(f, n);
      d(0, 0) = FieldElement::primitive(f);
      gens.push_back(d);
    }
    if (n == 1 && g.family == Family::SL) gens.push_back(identity(f, 1));
    return gens;
  }

  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n) * 131 + f.q());
  const Matrix I = identity(f, n);
  const int want = 3 + extra;
  for (int tries = 0; static_cast<int>(gens.size()) < want && tries < 50 * want; ++tries) {
    const Matrix s = random_lie_element(g, rng);
    auto inv = inverse(I + s);
    if (!inv) continue;
    gens.push_back((I - s) * *inv);
  }
  if (g.family == Family::Oodd || g.family == Family::Oeven || g.family == Family::U) {
    // Reflections (quasi-reflections for U) reach the other cosets.
    const FieldElement zeta = g.family == Family::U
                                  ? FieldElement::primitive(f).pow(static_cast<std::int64_t>(g.base_q) - 1)
                                  : FieldElement::from_int(f, -1);
    int made = 0;
    for (int tries = 0; made < 1 + extra && tries < 200; ++tries) {
      const Matrix v = random_vector(f, n, rng);
      const FieldElement hv = pairing(g, v, v);
      if (hv.is_zero()) continue;
      const Matrix row = form_adjoint_transpose(g, v) * *g.form;
      gens.push_back(I - ((FieldElement::one(f) - zeta) * hv.inverse()) * (v * row));
      ++made;
    }
  }
  for (const auto& m : gens)
    if (!membership(g, m)) throw std::logic_error("generator outside " + g.label());
  return gens;
}

namespace {

std::string key_string(const Matrix& m) {
  const auto k = entry_key(m);
  return std::string(reinterpret_cast<const char*>(k.data()), k.size() * sizeof(std::uint32_t));
}

std::vector<Matrix> closure(const std::vector<Matrix>& gens, const Matrix& id, std::uint64_t cap) {
  std::unordered_set<std::string> seen;
  std::vector<Matrix> elems{id};
  seen.insert(key_string(id));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      Matrix m = elems[head] * s;
      if (seen.insert(key_string(m)).second) {
        elems.push_back(std::move(m));
        if (elems.size() > cap) return elems;
      }
    }
  }
  return elems;
}

}  // namespace

std::vector<Matrix> generate(const GroupSpec& g, std::uint64_t budget, std::uint64_t seed) {
  const auto order = group_order(g);
  if (!order || *order > budget)
    throw BudgetExceeded(g.label() + " has order " + (order ? std::to_string(*order) : std::string("> 2^64")) +
                         ", above the budget " + std::to_string(budget));
  const Matrix id = identity(g.field, g.n);
  std::vector<Matrix> elems;
  for (int extra = 0; extra <= 20; extra += 2) {
    elems = closure(standard_generators(g, seed, extra), id, *order);
    if (elems.size() == *order) break;
    if (elems.size() > *order) throw std::logic_error("closure of " + g.label() + " exceeds the order formula");
  }
  if (elems.size() != *order)
    throw std::logic_error("closure of " + g.label() + " stalled at " + std::to_string(elems.size()));
  std::sort(elems.begin(), elems.end(), lex_less);
  return elems;
}

ClassPartition conjugacy_classes(const GroupSpec& g, std::uint64_t budget, std::uint64_t seed) {
  const auto elems = generate(g, budget, seed);
  // generate() succeeded, so some generator set with extra <= 20 closes; find it again.
  std::vector<Matrix> gens;
  for (int extra = 0; extra <= 20; extra += 2) {
    gens = standard_generators(g, seed, extra);
    if (closure(gens, identity(g.field, g.n), elems.size()).size() == elems.size()) break;
  }
  std::vector<std::pair<Matrix, Matrix>> conj;
  for (const auto& s : gens) conj.emplace_back(s, *inverse(s));
  std::unordered_set<std::string> seen;
  ClassPartition out;
  for (const auto& x : elems) {  // lex order, so x is its class minimum
    if (seen.count(key_string(x))) continue;
    std::vector<Matrix> orbit{x};
    seen.insert(key_string(x));
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& [s, si] : conj) {
        Matrix y = s * orbit[head] * si;
        if (seen.insert(key_string(y)).second) orbit.push_back(std::move(y));
      }
    out.representatives.push_back(x);
    out.sizes.push_back(orbit.size());
  }
  return out;
}

CentralizerSpace centralizer_space(const GroupSpec& g, const Matrix& a) {
  if (const auto mem = membership(g, a); !mem) throw std::invalid_argument("centralizer: element not in group (" + mem.reason + ")");
  CentralizerSpace c;
  c.basis = intertwiner_space(a, a);
  bool diagonal = true;
  for (int i = 0; i < g.n && diagonal; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && !a(i, j).is_zero()) {
        diagonal = false;
        break;
      }
  std::ostringstream os;
  if (diagonal) {
    std::vector<FieldElement> seen;
    for (int i = 0; i < g.n; ++i) {
      auto it = std::find(seen.begin(), seen.end(), a(i, i));
      if (it == seen.end()) {
        seen.push_back(a(i, i));
        c.eigen_blocks.push_back({i});
      } else {
        c.eigen_blocks[it - seen.begin()].push_back(i);
      }
    }
    os << "diag(";
    for (std::size_t b = 0; b < c.eigen_blocks.size(); ++b)
      os << (b ? ", " : "") << "A_" << c.eigen_blocks[b].size() << " on {"
         << std::accumulate(std::next(c.eigen_blocks[b].begin()), c.eigen_blocks[b].end(),
                            std::to_string(c.eigen_blocks[b][0]),
                            [](std::string s, int v) { return s + "," + std::to_string(v); })
         << "}";
    os << ")";
  } else {
    os << "commutant of dimension " << c.basis.size();
  }
  os << " intersected with " << g.label();
  if (g.family == Family::SL) os << " (det = 1)";
  c.shape = os.str();
  return c;
}

namespace {

// Odometer over coefficient tuples in lex order (first coefficient most
// significant, each coordinate by element rank).
SearchResult enumerate_span(const GroupSpec& g, const std::vector<Matrix>& basis) {
  SearchResult r;
  r.method = "lex-enumeration";
  r.dimension = static_cast<int>(basis.size());
  const FieldSpec f = g.field;
  const std::uint32_t q = f.q();
  const std::size_t d = basis.size();
  std::vector<std::uint32_t> rank(d, 0);
  std::vector<FieldElement> coeffs(d, FieldElement::zero(f));
  for (;;) {
    ++r.work;
    Matrix m = combine(basis, coeffs);
    if (membership(g, m)) {
      r.status = Status::Found;
      r.conjugator = m;
      return r;
    }
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++rank[pos] < q) {
        coeffs[pos] = element_at_rank(f, rank[pos]);
        break;
      }
      rank[pos] = 0;
      coeffs[pos] = element_at_rank(f, 0);
      if (pos == 0) {
        r.status = Status::NotFound;
        r.exhaustive = true;
        return r;
      }
    }
  }
}

std::vector<FieldElement> random_coeffs(FieldSpec f, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  std::vector<FieldElement> c(d);
  for (auto& x : c) x = FieldElement(f, pick(rng));
  return c;
}

// Extended gcd: returns g and sets u, v with u a + v b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  if (b == 0) {
    u = 1;
    v = 0;
    return a;
  }
  std::int64_t u1, v1;
  const std::int64_t g = ext_gcd(b, a % b, u1, v1);
  u = v1;
  v = u1 - (a / b) * v1;
  return g;
}

SearchResult sample_span(const GroupSpec& g, const std::vector<Matrix>& basis, const SearchOptions& opts) {
  SearchResult r;
  r.method = "sampling";
  r.dimension = static_cast<int>(basis.size());
  const FieldSpec f = g.field;
  std::mt19937_64 rng(opts.seed ^ 0xC0FFEE1234567ULL);
  auto next_invertible = [&]() -> std::optional<Matrix> {
    while (r.work < opts.budget) {
      ++r.work;
      Matrix m = combine(basis, random_coeffs(f, basis.size(), rng));
      if (!det(m).is_zero()) return m;
    }
    return std::nullopt;
  };
  auto g0 = next_invertible();
  if (!g0) {
    r.status = Status::Unknown;
    r.note = "no invertible member sampled within budget";
    return r;
  }
  if (g.family == Family::GL) {
    r.status = Status::Found;
    r.conjugator = *g0;
    return r;
  }
  // SL: invertible members form g0 * C with C a group; combine determinant
  // logs of sampled C-elements until det(g0)^-1 is reachable.
  const std::int64_t order = f.q() - 1;
  const Matrix g0inv = *inverse(*g0);
  const std::int64_t target = (order - det(*g0).log() % order) % order;
  std::int64_t acc_log = order;
  Matrix acc = identity(f, g.n);
  auto absorb = [&](const Matrix& z, std::int64_t l) {
    std::int64_t u, v;
    const std::int64_t gg = ext_gcd(acc_log, l, u, v);
    acc = power(acc, u) * power(z, v);
    acc_log = gg;
  };
  absorb(scalar_matrix(FieldElement::primitive(f), g.n), g.n % order);
  for (int s = 0; s < 64 && target % acc_log != 0; ++s) {
    auto h = next_invertible();
    if (!h) break;
    const Matrix z = g0inv * *h;
    absorb(z, det(z).log() % order);
  }
  if (target % acc_log != 0) {
    r.status = Status::Unknown;
    r.note = "determinant 1 not reached by sampled centralizer elements";
    return r;
  }
  Matrix c = *g0 * power(acc, target / acc_log);
  if (!membership(g, c)) throw std::logic_error("determinant adjustment failed");
  r.status = Status::Found;
  r.conjugator = c;
  return r;
}

}  // namespace

SearchResult find_member_in_span(const GroupSpec& g, const std::vector<Matrix>& basis, const SearchOptions& opts) {
  if (basis.empty()) {
    SearchResult r;
    r.status = Status::NotFound;
    r.exhaustive = true;
    r.dimension = 0;
    r.method = "lex-enumeration";
    r.note = "zero space";
    return r;
  }
  bool of = false;
  const std::uint64_t size = pow_u64(g.field.q(), basis.size(), of);
  if (!of && size <= std::min(opts.lex_cap, opts.budget)) return enumerate_span(g, basis);
  if (!has_form(g.family)) return sample_span(g, basis, opts);
  return solve_form_preserving(basis, *g.form, g.family == Family::U ? std::optional(g.base_q) : std::nullopt, opts);
}

SearchResult is_conjugate_in_group(const GroupSpec& g, const Matrix& x, const Matrix& y, const SearchOptions& opts) {
  if (const auto m = membership(g, x); !m) throw std::invalid_argument("X not in " + g.label() + ": " + m.reason);
  if (const auto m = membership(g, y); !m) throw std::invalid_argument("Y not in " + g.label() + ": " + m.reason);
  if (equal(x, y)) {
    SearchResult r;
    r.status = Status::Found;
    r.conjugator = identity(g.field, g.n);
    r.method = "identity";
    return r;
  }
  const bool gl_decides = g.family == Family::GL || g.family == Family::SL || g.family == Family::U;
  if (gl_decides) {
    const auto ix = elementary_divisors(x);
    const auto iy = elementary_divisors(y);
    if (ix.entries != iy.entries) {
      SearchResult r;
      r.status = Status::NotFound;
      r.exhaustive = true;
      r.method = "gl-invariants";
      r.note = "elementary divisors differ";
      return r;
    }
  }
  SearchResult r = find_member_in_span(g, intertwiner_space(x, y), opts);
  if (g.family == Family::U && r.status == Status::NotFound)
    r.note += (r.note.empty() ? "" : "; ") + std::string("GL invariants agree but no unitary conjugator exists");
  if (g.family == Family::U && r.status == Status::Unknown)
    r.note += (r.note.empty() ? "" : "; ") + std::string("GL invariants agree; unitary conjugator not found within budget");
  return r;
}

namespace {

// Columns of P form a basis in which the form has a canonical Gram matrix:
// I (hermitian), diag(1,...,1,delta) with delta in {1, nonsquare}
// (symmetric), or the standard alternating matrix.
struct Canonical {
  Matrix p;
  Matrix gram;
};

Matrix column(const Matrix& m, int c) { return m.col(c); }

Canonical canonicalize(const GroupSpec& g) {
  const FieldSpec f = g.field;
  const int n = g.n;
  std::vector<Matrix> w;
  for (int i = 0; i < n; ++i) w.push_back(column(identity(f, n), i));
  auto b = [&](const Matrix& x, const Matrix& y) { return pairing(g, x, y); };
  std::vector<Matrix> out;

  if (g.family == Family::Sp) {
    std::vector<Matrix> es, fs;
    while (!w.empty()) {
      const Matrix e = w.front();
      std::size_t j = 1;
      while (j < w.size() && b(e, w[j]).is_zero()) ++j;
      if (j == w.size()) throw std::invalid_argument("degenerate alternating form");
      Matrix fv = b(e, w[j]).inverse() * w[j];
      w.erase(w.begin() + j);
      w.erase(w.begin());
      for (auto& v : w) v = v - b(v, fv) * e + b(v, e) * fv;  // project off span{e, f}
      es.push_back(e);
      fs.push_back(fv);
    }
    std::vector<Matrix> cols = es;
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) cols.push_back(*it);
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) p.col(i) = cols[i];
    return {p, form_matrix(FormKind::Symplectic, n, f)};
  }

  const bool herm = g.family == Family::U;
  const FieldElement nu = herm ? FieldElement::one(f) : first_nonsquare(f);
  std::vector<Matrix> ones, nus;
  const auto elems = all_elements(f);
  while (!w.empty()) {
    std::optional<Matrix> v;
    std::size_t drop = 0;
    for (std::size_t i = 0; i < w.size() && !v; ++i)
      if (!b(w[i], w[i]).is_zero()) {
        v = w[i];
        drop = i;
      }
    for (std::size_t i = 0; i < w.size() && !v; ++i)
      for (std::size_t j = i + 1; j < w.size() && !v; ++j)
        for (const auto& lam : elems) {
          Matrix c = w[i] + lam * w[j];
          if (!b(c, c).is_zero()) {
            v = c;
            drop = i;
            break;
          }
        }
    if (!v) throw std::invalid_argument("degenerate form");
    const FieldElement hv = b(*v, *v);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(drop));
    for (auto& x : w) x = x - (b(*v, x) * hv.inverse()) * *v;
    if (herm) {
      // hv lies in F_q; pick c with c^{q+1} = hv^{-1}.
      const std::uint32_t l = hv.inverse().log();
      const FieldElement c = FieldElement::primitive(f).pow(l / (g.base_q + 1));
      ones.push_back(c * *v);
    } else if (is_square(hv.inverse())) {
      ones.push_back(sqrt(hv.inverse()) * *v);
    } else {
      nus.push_back(sqrt(nu * hv.inverse()) * *v);
    }
  }
  while (nus.size() >= 2) {
    // nu (a^2 + b^2) = 1 turns a pair of nu-vectors into two 1-vectors.
    const FieldElement target = nu.inverse();
    std::optional<std::pair<FieldElement, FieldElement>> ab;
    for (const auto& a : elems) {
      const FieldElement rest = target - a * a;
      if (rest.is_zero() || is_square(rest)) {
        ab = {{a, rest.is_zero() ? rest : sqrt(rest)}};
        break;
      }
    }
    const Matrix u = nus[nus.size() - 2], v = nus.back();
    nus.resize(nus.size() - 2);
    ones.push_back(ab->first * u + ab->second * v);
    ones.push_back(-ab->second * u + ab->first * v);
  }
  std::vector<Matrix> cols = ones;
  for (auto& v : nus) cols.push_back(v);
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) p.col(i) = cols[i];
  Matrix gram = identity(f, n);
  if (!nus.empty()) gram(n - 1, n - 1) = nu;
  return {p, gram};
}

}  // namespace

Matrix transport_matrix(const GroupSpec& from, const GroupSpec& to) {
  if (!has_form(from.family) || from.family != to.family || from.n != to.n || from.field != to.field ||
      from.base_q != to.base_q)
    throw std::invalid_argument("transport needs two form groups of the same family, size and field");
  Canonical a = canonicalize(from);
  const Canonical b = canonicalize(to);
  if (!equal(a.gram, b.gram)) {
    if (from.family != Family::Oodd) throw std::invalid_argument("forms are not equivalent");
    // O(cJ) = O(J); in odd dimension scaling by a nonsquare flips the class.
    GroupSpec scaled = from;
    scaled.form = first_nonsquare(from.field) * *from.form;
    a = canonicalize(scaled);
    if (!equal(a.gram, b.gram)) throw std::invalid_argument("forms are not equivalent up to scaling");
  }
  return b.p * *inverse(a.p);
}

}  // namespace cgw
