#include "cgw/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cgw {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  int k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> pow_p;  // p^0 .. p^k
  std::vector<std::uint32_t> exp_table;
  std::vector<std::int32_t> log_table;
  std::vector<std::uint32_t> add_table;
  std::vector<std::uint32_t> neg_table;
  std::vector<std::uint32_t> rank_of;
  std::vector<std::uint32_t> at_rank;
  std::string text;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (!add_table.empty()) return add_table[static_cast<std::size_t>(a) * q + b];
    std::uint32_t r = 0;
    for (int i = 0; i < k; ++i) {
      r += ((a % p + b % p) % p) * pow_p[i];
      a /= p;
      b /= p;
    }
    return r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_table[log_table[a] + log_table[b]];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw FieldError("division by zero");
    return exp_table[(q - 1 - log_table[a]) % (q - 1)];
  }
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
    if (a == 0) {
      if (e == 0) return 1;
      if (e < 0) throw FieldError("zero to a negative power");
      return 0;
    }
    const std::int64_t m = q - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_table[a]) * ((e % m + m) % m)) % m;
    return exp_table[r];
  }
};

}  // namespace detail

namespace {

using IntPoly = std::vector<std::int64_t>;  // low-to-high, mod p

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

IntPoly poly_mod(IntPoly a, const IntPoly& m, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

IntPoly poly_mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

IntPoly poly_powmod(IntPoly base, std::uint64_t e, const IntPoly& m, std::int64_t p) {
  IntPoly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

IntPoly poly_gcd(IntPoly a, IntPoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    IntPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= k/2.
bool int_poly_irreducible(const IntPoly& f, std::int64_t p) {
  const int k = static_cast<int>(f.size()) - 1;
  IntPoly xp{0, 1};
  for (int i = 1; i <= k / 2; ++i) {
    xp = poly_powmod(xp, static_cast<std::uint64_t>(p), f, p);
    IntPoly d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    trim(d);
    if (d.empty()) return false;
    if (poly_gcd(f, d, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::unique_ptr<detail::FieldData> build_field(std::uint32_t p, int k) {
  auto fd = std::make_unique<detail::FieldData>();
  fd->p = p;
  fd->k = k;
  std::uint64_t q = 1;
  fd->pow_p.push_back(1);
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > (1u << 22)) throw FieldError("field too large for table arithmetic");
    fd->pow_p.push_back(static_cast<std::uint32_t>(q));
  }
  fd->q = static_cast<std::uint32_t>(q);

  // Smallest monic irreducible, coefficient tuples compared c0 first.
  IntPoly modulus;
  if (k == 1) {
    modulus = {0, 1};
  } else {
    for (std::uint64_t n = 0; n < q; ++n) {
      IntPoly f(k + 1, 0);
      std::uint64_t m = n;
      for (int i = k - 1; i >= 0; --i) {
        f[i] = static_cast<std::int64_t>(m % p);
        m /= p;
      }
      f[k] = 1;
      if (f[0] == 0) continue;
      if (int_poly_irreducible(f, p)) {
        modulus = f;
        break;
      }
    }
  }
  for (auto c : modulus) fd->modulus.push_back(static_cast<std::uint32_t>(c));

  auto to_poly = [&](std::uint32_t idx) {
    IntPoly f(k, 0);
    for (int i = 0; i < k; ++i) {
      f[i] = idx % p;
      idx /= p;
    }
    trim(f);
    return f;
  };
  auto to_index = [&](const IntPoly& f) {
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < f.size(); ++i) idx += static_cast<std::uint32_t>(f[i]) * fd->pow_p[i];
    return idx;
  };

  // Primitive element: first in element order whose order is q - 1.
  fd->rank_of.resize(q);
  fd->at_rank.resize(q);
  for (std::uint32_t idx = 0; idx < q; ++idx) {
    std::uint32_t r = 0, t = idx;
    for (int i = 0; i < k; ++i) {
      r += (t % p) * fd->pow_p[k - 1 - i];
      t /= p;
    }
    fd->rank_of[idx] = r;
    fd->at_rank[r] = idx;
  }
  const auto factors = prime_factors(q - 1);
  IntPoly gen;
  for (std::uint32_t r = 1; r < q; ++r) {
    IntPoly g = to_poly(fd->at_rank[r]);
    bool primitive = true;
    for (auto f : factors) {
      IntPoly h = poly_powmod(g, (q - 1) / f, modulus, p);
      if (h.size() == 1 && h[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  if (q == 2) gen = {1};

  fd->exp_table.resize(2 * (q - 1));
  fd->log_table.assign(q, -1);
  IntPoly cur{1};
  for (std::uint64_t e = 0; e < q - 1; ++e) {
    const std::uint32_t idx = to_index(cur);
    fd->exp_table[e] = idx;
    fd->exp_table[e + q - 1] = idx;
    fd->log_table[idx] = static_cast<std::int32_t>(e);
    cur = poly_mulmod(cur, gen, modulus, p);
  }

  fd->neg_table.resize(q);
  for (std::uint32_t idx = 0; idx < q; ++idx) {
    std::uint32_t r = 0, t = idx;
    for (int i = 0; i < k; ++i) {
      r += ((p - t % p) % p) * fd->pow_p[i];
      t /= p;
    }
    fd->neg_table[idx] = r;
  }
  if (q <= 1024) {
    detail::FieldData tmp = *fd;  // digitwise add while the table is empty
    fd->add_table.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) fd->add_table[static_cast<std::size_t>(a) * q + b] = tmp.add(a, b);
  }

  std::ostringstream os;
  os << "p=" << p << ";k=" << k << ";mod=";
  for (std::size_t i = 0; i < fd->modulus.size(); ++i) os << (i ? "," : "") << fd->modulus[i];
  fd->text = os.str();
  return fd;
}

std::recursive_mutex& registry_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<std::pair<std::uint32_t, int>, std::unique_ptr<detail::FieldData>>& registry() {
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<detail::FieldData>> r;
  return r;
}

const detail::FieldData* data_of(const FieldElement& x) {
  if (!x.bound()) throw FieldError("operation needs an element with a field");
  return x.field().data();
}

// Common field of two operands; null when both are literals.
const detail::FieldData* common(const FieldElement& a, const FieldElement& b) {
  const auto* fa = a.bound() ? a.field().data() : nullptr;
  const auto* fb = b.bound() ? b.field().data() : nullptr;
  if (fa && fb && fa != fb) throw FieldError("mixed-field arithmetic; embed explicitly");
  return fa ? fa : fb;
}

std::uint32_t index_in(const FieldElement& x, const detail::FieldData* fd) {
  if (x.bound()) return x.index();
  const std::int64_t p = fd->p;
  return static_cast<std::uint32_t>(((x.literal() % p) + p) % p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec make_field(std::uint32_t p, int k) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw FieldError("characteristic 2 is not supported");
  if (k < 1) throw FieldError("extension degree must be at least 1");
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[{p, k}];
  if (!slot) slot = build_field(p, k);
  return FieldSpec(slot.get());
}

std::uint32_t FieldSpec::p() const { return data_->p; }
int FieldSpec::k() const { return data_->k; }
std::uint32_t FieldSpec::q() const { return data_->q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return data_->modulus; }
std::string FieldSpec::to_string() const { return data_ ? data_->text : std::string("<none>"); }

FieldSpec FieldSpec::parse(std::string_view text) {
  std::uint32_t p = 0;
  int k = 0;
  std::vector<std::uint32_t> mod;
  std::string s(text);
  std::stringstream ss(s);
  std::string part;
  try {
    while (std::getline(ss, part, ';')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw FieldError("malformed field spec: " + s);
      const auto key = part.substr(0, eq);
      const auto val = part.substr(eq + 1);
      if (key == "p") {
        p = static_cast<std::uint32_t>(std::stoul(val));
      } else if (key == "k") {
        k = std::stoi(val);
      } else if (key == "mod") {
        std::stringstream vs(val);
        std::string c;
        while (std::getline(vs, c, ',')) mod.push_back(static_cast<std::uint32_t>(std::stoul(c)));
      } else {
        throw FieldError("unknown field spec key: " + key);
      }
    }
  } catch (const std::logic_error&) {
    throw FieldError("malformed field spec: " + s);
  }
  FieldSpec f = make_field(p, k);
  if (!mod.empty() && mod != f.modulus()) throw FieldError("unsupported modulus in field spec: " + s);
  return f;
}

FieldElement::FieldElement(FieldSpec field, std::uint32_t index) : field_(field.data()), raw_(index) {
  if (!field_) throw FieldError("element needs a valid field");
  if (index >= field_->q) throw FieldError("element index out of range");
}

FieldElement FieldElement::from_int(FieldSpec f, std::int64_t n) {
  const std::int64_t p = f.p();
  return {f, static_cast<std::uint32_t>(((n % p) + p) % p)};
}

FieldElement FieldElement::from_coeffs(FieldSpec f, const std::vector<std::int64_t>& coeffs) {
  if (static_cast<int>(coeffs.size()) > f.k()) throw FieldError("too many coordinates for field");
  const std::int64_t p = f.p();
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    idx += static_cast<std::uint32_t>(((coeffs[i] % p) + p) % p) * f.data()->pow_p[i];
  return {f, idx};
}

FieldElement FieldElement::generator(FieldSpec f) {
  if (f.k() == 1) return zero(f);  // modulus x: the class of x is 0
  return {f, f.p()};
}

FieldElement FieldElement::primitive(FieldSpec f) { return {f, f.data()->exp_table[f.q() > 2 ? 1 : 0]}; }

FieldElement FieldElement::parse(FieldSpec f, std::string_view text) {
  std::string s(text);
  const auto b = s.find('[');
  const auto e = s.rfind(']');
  // bare integers are prime-field literals
  if (b == std::string::npos && e == std::string::npos && !s.empty()) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return from_int(f, v);
    } catch (const std::logic_error&) {
    }
    throw FieldError("malformed element: " + s);
  }
  if (b == std::string::npos || e == std::string::npos || e < b) throw FieldError("malformed element: " + s);
  std::vector<std::int64_t> coeffs;
  std::stringstream ss(s.substr(b + 1, e - b - 1));
  std::string c;
  try {
    while (std::getline(ss, c, ',')) coeffs.push_back(std::stoll(c));
  } catch (const std::logic_error&) {
    throw FieldError("malformed element: " + s);
  }
  return from_coeffs(f, coeffs);
}

FieldSpec FieldElement::field() const { return FieldSpec(field_); }

std::uint32_t FieldElement::index() const {
  if (!field_) throw FieldError("literal has no field index");
  return static_cast<std::uint32_t>(raw_);
}

FieldElement FieldElement::in(FieldSpec f) const {
  if (field_) {
    if (field_ != f.data()) throw FieldError("element belongs to a different field");
    return *this;
  }
  return from_int(f, raw_);
}

bool FieldElement::is_zero() const { return raw_ == 0; }

bool FieldElement::is_one() const { return raw_ == 1; }

bool FieldElement::in_prime_field() const { return !field_ || raw_ < field_->p; }

std::vector<std::uint32_t> FieldElement::coeffs() const {
  const auto* fd = data_of(*this);
  std::vector<std::uint32_t> out(fd->k);
  auto t = static_cast<std::uint32_t>(raw_);
  for (int i = 0; i < fd->k; ++i) {
    out[i] = t % fd->p;
    t /= fd->p;
  }
  return out;
}

FieldElement FieldElement::inverse() const {
  if (!field_) {
    if (raw_ == 1 || raw_ == -1) return *this;
    throw FieldError("cannot invert a literal other than +-1");
  }
  return {field(), field_->inv(index())};
}

FieldElement FieldElement::pow(std::int64_t e) const {
  const auto* fd = data_of(*this);
  return {field(), fd->pow(index(), e)};
}

std::uint32_t FieldElement::log() const {
  const auto* fd = data_of(*this);
  if (raw_ == 0) throw FieldError("log of zero");
  return static_cast<std::uint32_t>(fd->log_table[index()]);
}

std::uint64_t FieldElement::order() const {
  const auto* fd = data_of(*this);
  const std::uint64_t m = fd->q - 1;
  return m / std::gcd<std::uint64_t>(log(), m);
}

std::string FieldElement::to_string() const {
  if (!field_) return std::to_string(raw_);
  std::ostringstream os;
  os << '[';
  const auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

FieldElement FieldElement::operator-() const {
  if (!field_) return FieldElement(static_cast<int>(-raw_));
  return {field(), field_->neg_table[index()]};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const auto* fd = common(a, b);
  if (!fd) return FieldElement(static_cast<int>(a.raw_ + b.raw_));
  return {FieldSpec(a.bound() ? a.field() : b.field()), fd->add(index_in(a, fd), index_in(b, fd))};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const auto* fd = common(a, b);
  if (!fd) return FieldElement(static_cast<int>(a.raw_ * b.raw_));
  return {a.bound() ? a.field() : b.field(), fd->mul(index_in(a, fd), index_in(b, fd))};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  const auto* fd = common(a, b);
  if (!fd) return a.raw_ == b.raw_;
  return index_in(a, fd) == index_in(b, fd);
}

bool element_less(const FieldElement& a, const FieldElement& b) { return element_rank(a) < element_rank(b); }

std::uint32_t element_rank(const FieldElement& x) { return data_of(x)->rank_of[x.index()]; }

FieldElement element_at_rank(FieldSpec f, std::uint32_t rank) { return {f, f.data()->at_rank.at(rank)}; }

FieldElement frobenius(const FieldElement& x, int e) {
  const auto* fd = data_of(x);
  if (x.is_zero()) return x;
  const std::uint64_t m = fd->q - 1;
  std::uint64_t pe = 1;
  for (int i = 0; i < e; ++i) pe = pe * fd->p % m;
  return x.pow(static_cast<std::int64_t>(pe));
}

void check_unitary_level(FieldSpec f, std::uint64_t base_q) {
  std::uint64_t t = base_q;
  int m = 0;
  while (t > 1 && t % f.p() == 0) {
    t /= f.p();
    ++m;
  }
  if (t != 1 || m == 0) throw FieldError("base_q " + std::to_string(base_q) + " is not a power of p");
  if (f.k() != 2 * m) {
    throw FieldError("unitary involution x -> x^" + std::to_string(base_q) + " needs the field F_{q^2}, got " +
                     f.to_string());
  }
}

FieldElement unitary_sigma(const FieldElement& x, std::uint64_t base_q) {
  data_of(x);
  check_unitary_level(x.field(), base_q);
  return x.pow(static_cast<std::int64_t>(base_q));
}

namespace {

std::map<std::tuple<std::uint32_t, int, int>, std::uint32_t>& root_cache() {
  static std::map<std::tuple<std::uint32_t, int, int>, std::uint32_t> c;
  return c;
}

FieldElement apply_root_map(const FieldElement& x, FieldSpec target, const FieldElement& root) {
  const auto c = x.coeffs();
  FieldElement acc = FieldElement::zero(target);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * root + FieldElement::from_int(target, c[i]);
  return acc;
}

// Image of the class of x in F_{p^a} inside F_{p^b}, chosen so that all
// embeddings between divisors of b commute.
FieldElement root_image(std::uint32_t p, int a, int b) {
  FieldSpec src = make_field(p, a);
  FieldSpec tgt = make_field(p, b);
  std::lock_guard lock(registry_mutex());
  const auto key = std::make_tuple(p, a, b);
  if (auto it = root_cache().find(key); it != root_cache().end()) return {tgt, it->second};

  std::vector<FieldElement> roots;
  const auto& mod = src.modulus();
  for (std::uint32_t r = 0; r < tgt.q() && static_cast<int>(roots.size()) < a; ++r) {
    FieldElement x = element_at_rank(tgt, r);
    FieldElement acc = FieldElement::zero(tgt);
    for (std::size_t i = mod.size(); i-- > 0;) acc = acc * x + FieldElement::from_int(tgt, mod[i]);
    if (acc.is_zero()) roots.push_back(x);
  }
  for (const auto& cand : roots) {
    bool ok = true;
    for (int c = 2; c < a && ok; ++c) {
      if (a % c != 0) continue;
      FieldElement tc = FieldElement::generator(make_field(p, c));
      FieldElement via = apply_root_map(embed(tc, src), tgt, cand);
      if (via != embed(tc, tgt)) ok = false;
    }
    if (ok) {
      root_cache()[key] = cand.index();
      return cand;
    }
  }
  throw FieldError("no compatible embedding root found");
}

}  // namespace

FieldElement embed(const FieldElement& x, FieldSpec target) {
  if (!x.bound()) return x.in(target);
  FieldSpec src = x.field();
  if (src == target) return x;
  if (src.p() != target.p() || target.k() % src.k() != 0) {
    throw FieldError("cannot embed " + src.to_string() + " into " + target.to_string());
  }
  if (src.k() == 1) return FieldElement(target, x.index());
  return apply_root_map(x, target, root_image(src.p(), src.k(), target.k()));
}

bool is_square(const FieldElement& x) {
  data_of(x);
  if (x.is_zero()) return true;
  return x.log() % 2 == 0;
}

FieldElement sqrt(const FieldElement& x) {
  const auto* fd = data_of(x);
  if (x.is_zero()) return x;
  if (!is_square(x)) throw FieldError("sqrt of a non-square " + x.to_string() + "; extend the field first");
  FieldElement s(x.field(), fd->exp_table[x.log() / 2]);
  FieldElement t = -s;
  return element_less(t, s) ? t : s;
}

FieldElement power_map_inverse(const FieldElement& x, std::int64_t n) {
  const auto* fd = data_of(x);
  const std::int64_t m = fd->q - 1;
  const std::int64_t nn = ((n % m) + m) % m;
  if (std::gcd(nn, m) != 1) {
    throw FieldError("x -> x^" + std::to_string(n) + " is not a bijection of " + x.field().to_string());
  }
  if (x.is_zero()) return x;
  // inverse of nn mod m
  std::int64_t t = 0, new_t = 1, r = m, new_r = nn;
  while (new_r != 0) {
    const std::int64_t qt = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - qt * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - qt * new_r);
  }
  if (t < 0) t += m;
  return x.pow(t);
}

std::vector<FieldElement> all_elements(FieldSpec f) {
  std::vector<FieldElement> out;
  out.reserve(f.q());
  for (std::uint32_t r = 0; r < f.q(); ++r) out.push_back(element_at_rank(f, r));
  return out;
}

}  // namespace cgw
