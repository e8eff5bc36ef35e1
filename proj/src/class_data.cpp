#include "cgw/class_data.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cgw {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](int v) { return v <= 0; }), parts.end());
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Partition::multiplicity(int v) const { return static_cast<int>(std::count(parts.begin(), parts.end(), v)); }

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ')';
  return os.str();
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      Partition p;
      p.parts = cur;
      out.push_back(p);
      return;
    }
    for (int v = std::min(rest, max_part); v >= 1; --v) {
      cur.push_back(v);
      rec(rest - v, v);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool is_symplectic_partition(const Partition& p) {
  for (int v : p.parts)
    if (v % 2 == 1 && p.multiplicity(v) % 2 == 1) return false;
  return true;
}

bool is_orthogonal_partition(const Partition& p) {
  for (int v : p.parts)
    if (v % 2 == 0 && p.multiplicity(v) % 2 == 1) return false;
  return true;
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::GL:
      return "GL";
    case GroupKind::U:
      return "U";
    case GroupKind::Sp:
      return "Sp";
    case GroupKind::O:
      return "O";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view s) {
  if (s == "GL") return GroupKind::GL;
  if (s == "U") return GroupKind::U;
  if (s == "Sp") return GroupKind::Sp;
  if (s == "O") return GroupKind::O;
  throw std::invalid_argument("unknown class kind: " + std::string(s));
}

int ClassFunction::total() const {
  int t = 0;
  for (const auto& [f, lam] : entries) t += lam.size() * f.degree();
  return t;
}

bool is_unit_linear(const Poly& f) {
  if (f.degree() != 1 || !f.is_monic()) return false;
  const FieldElement c = f.coeff(0);
  return c.is_one() || (-c).is_one();
}

namespace {

void check_key(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("constant key " + f.to_string());
  if (!f.is_monic()) throw std::invalid_argument("non-monic key " + f.to_string());
  if (f.coeff(0).is_zero()) throw std::invalid_argument("key divisible by x: " + f.to_string());
}

Partition lookup(const ClassFunction& c, const Poly& f) {
  auto it = c.entries.find(f);
  return it == c.entries.end() ? Partition{} : it->second;
}

}  // namespace

Validation validate_class_function(const ClassFunction& c) {
  for (const auto& [f, lam] : c.entries) {
    check_key(f);
    if (f.field() != c.field) throw std::invalid_argument("key over a different field: " + f.to_string());
  }
  if (c.kind == GroupKind::U) check_unitary_level(c.field, c.base_q);

  for (const auto& [f, lam] : c.entries) {
    if (!is_irreducible(f)) return {false, "key irreducible"};
    if (lam.empty()) return {false, "nonempty partition per listed key"};
  }

  switch (c.kind) {
    case GroupKind::GL:
      break;
    case GroupKind::U:
      for (const auto& [f, lam] : c.entries)
        if (lookup(c, twisted_dual(f, c.base_q)) != lam) return {false, "lambda_{f~} = lambda_f"};
      break;
    case GroupKind::Sp:
    case GroupKind::O: {
      for (const auto& [f, lam] : c.entries)
        if (lookup(c, dual(f)) != lam) return {false, "lambda_{phi*} = lambda_phi"};
      const bool sp = c.kind == GroupKind::Sp;
      for (const auto& [f, lam] : c.entries) {
        if (!is_unit_linear(f)) continue;
        const bool ok = sp ? is_symplectic_partition(lam) : is_orthogonal_partition(lam);
        if (!ok) return {false, sp ? "lambda_phi in D_Sp for phi = x+-1" : "lambda_phi in D_O for phi = x+-1"};
      }
      break;
    }
  }
  if (c.total() != c.expected_total()) return {false, "sum |lambda_f| deg f = " + std::to_string(c.expected_total())};
  return {};
}

std::vector<ClassFunction> enumerate_class_functions(GroupKind kind, int n, FieldSpec field, std::uint64_t base_q,
                                                     std::uint64_t budget) {
  if (n < 0) throw std::invalid_argument("negative size");
  if (kind == GroupKind::U) check_unitary_level(field, base_q);
  ClassFunction proto;
  proto.kind = kind;
  proto.n = n;
  proto.field = field;
  proto.base_q = kind == GroupKind::U ? base_q : 0;
  const int total = proto.expected_total();

  // Orbits of keys under the relevant pairing; every key in an orbit carries
  // the same partition.
  struct Orbit {
    std::vector<Poly> keys;
    int weight = 0;
    bool unit_linear = false;
  };
  std::vector<Orbit> orbits;
  std::uint64_t key_count = 0;
  for (int d = 1; d <= total; ++d) {
    for (const Poly& f : monic_irreducibles(field, d)) {
      if (f.coeff(0).is_zero()) continue;
      if (++key_count > budget) throw std::length_error("class enumeration: too many candidate keys");
      Poly partner = f;
      if (kind == GroupKind::U) partner = twisted_dual(f, base_q);
      if (kind == GroupKind::Sp || kind == GroupKind::O) partner = dual(f);
      if (poly_less(partner, f)) continue;  // listed with its smaller partner
      Orbit o;
      o.keys.push_back(f);
      if (partner != f) o.keys.push_back(partner);
      o.weight = d * static_cast<int>(o.keys.size());
      o.unit_linear = is_unit_linear(f);
      orbits.push_back(std::move(o));
    }
  }

  auto allowed = [&](const Orbit& o, int s) {
    std::vector<Partition> out;
    for (auto& p : partitions_of(s)) {
      if (o.unit_linear && kind == GroupKind::Sp && !is_symplectic_partition(p)) continue;
      if (o.unit_linear && kind == GroupKind::O && !is_orthogonal_partition(p)) continue;
      out.push_back(p);
    }
    return out;
  };

  std::vector<ClassFunction> out;
  ClassFunction cur = proto;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
    if (rest == 0) {
      if (out.size() >= budget) throw std::length_error("class enumeration: budget exceeded");
      out.push_back(cur);
      return;
    }
    if (i == orbits.size()) return;
    const Orbit& o = orbits[i];
    for (int s = 1; s * o.weight <= rest; ++s) {
      for (const Partition& p : allowed(o, s)) {
        for (const auto& k : o.keys) cur.entries[k] = p;
        rec(i + 1, rest - s * o.weight);
        for (const auto& k : o.keys) cur.entries.erase(k);
      }
    }
    rec(i + 1, rest);
  };
  rec(0, total);
  return out;
}

ClassFunction closure_view(const ClassFunction& c) {
  int l = 1;
  for (const auto& [f, lam] : c.entries) l = std::lcm(l, f.degree());
  ClassFunction out = c;
  out.entries.clear();
  out.field = l == 1 ? c.field : make_field(c.field.p(), c.field.k() * l);
  if (c.kind == GroupKind::U && l != 1) {
    // sigma is only meaningful on F_{q^2}; the closure view drops the U tag.
    out.kind = GroupKind::GL;
    out.base_q = 0;
  }
  for (const auto& [f, lam] : c.entries) {
    for (const auto& [g, m] : factorize(embed(f, out.field))) out.entries[g] = lam;
  }
  return out;
}

nlohmann::json to_json(const ClassFunction& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  j["n"] = c.n;
  j["field"] = c.field.to_string();
  if (c.kind == GroupKind::U) j["base_q"] = c.base_q;
  j["entries"] = nlohmann::json::array();
  for (const auto& [f, lam] : c.entries) j["entries"].push_back({{"poly", f.to_string()}, {"partition", lam.parts}});
  return j;
}

ClassFunction class_function_from_json(const nlohmann::json& j) {
  ClassFunction c;
  c.kind = parse_group_kind(j.at("kind").get<std::string>());
  c.n = j.at("n").get<int>();
  if (j.contains("base_q")) c.base_q = j.at("base_q").get<std::uint64_t>();
  for (const auto& e : j.at("entries")) {
    Poly f = Poly::parse(e.at("poly").get<std::string>());
    if (!c.field.valid()) c.field = f.field();
    c.entries[f] = Partition(e.at("partition").get<std::vector<int>>());
  }
  if (j.contains("field")) c.field = FieldSpec::parse(j.at("field").get<std::string>());
  return c;
}

}  // namespace cgw
