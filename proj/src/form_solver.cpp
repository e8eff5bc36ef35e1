#include "cgw/form_solver.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace cgw {

namespace {

using Row = std::vector<std::uint32_t>;  // N coefficients then the right-hand side

struct Term {
  int u, v;
  std::uint32_t c;
};

struct Quadric {
  std::vector<Term> terms;
  std::uint32_t rhs;
  int depth = 0;  // cover prefix length after which the quadric is linear
};

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Fully reduced echelon system over F_p; each row has a distinct pivot that
// is zero in every other row.
class LinearSystem {
 public:
  LinearSystem(int vars, std::uint32_t p) : n_(vars), p_(p), pivot_row_(vars, -1) {}

  // False when the row contradicts the system.
  bool add(Row r) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint32_t f = r[pivots_[i]];
      if (f) axpy(r, rows_[i], p_ - f);
    }
    int piv = -1;
    for (int c = 0; c < n_; ++c)
      if (r[c]) {
        piv = c;
        break;
      }
    if (piv < 0) return r[n_] == 0;
    const std::uint32_t s = inv_mod(r[piv], p_);
    for (auto& x : r) x = static_cast<std::uint32_t>(std::uint64_t{x} * s % p_);
    for (auto& row : rows_) {
      const std::uint32_t f = row[piv];
      if (f) axpy(row, r, p_ - f);
    }
    pivot_row_[piv] = static_cast<int>(rows_.size());
    pivots_.push_back(piv);
    rows_.push_back(std::move(r));
    return true;
  }

  // Free variables set to zero.
  std::vector<std::uint32_t> solution() const {
    std::vector<std::uint32_t> y(n_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) y[pivots_[i]] = rows_[i][n_];
    return y;
  }

 private:
  void axpy(Row& dst, const Row& src, std::uint32_t f) const {
    for (std::size_t c = 0; c < dst.size(); ++c)
      if (src[c]) dst[c] = static_cast<std::uint32_t>((dst[c] + std::uint64_t{f} * src[c]) % p_);
  }

  int n_;
  std::uint32_t p_;
  std::vector<int> pivot_row_;
  std::vector<int> pivots_;
  std::vector<Row> rows_;
};

// Gaussian elimination of the quadric coefficient table over F_p. Returns
// false on an inconsistent row.
bool reduce_table(std::vector<Row>& table, std::uint32_t p) {
  if (table.empty()) return true;
  const int cols = static_cast<int>(table[0].size()) - 1;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(table.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(table.size()); ++i)
      if (table[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(table[r], table[piv]);
    const std::uint32_t s = inv_mod(table[r][c], p);
    for (auto& x : table[r]) x = static_cast<std::uint32_t>(std::uint64_t{x} * s % p);
    for (int i = 0; i < static_cast<int>(table.size()); ++i) {
      if (i == r || !table[i][c]) continue;
      const std::uint32_t f = p - table[i][c];
      for (int j = 0; j <= cols; ++j)
        table[i][j] = static_cast<std::uint32_t>((table[i][j] + std::uint64_t{f} * table[r][j]) % p);
    }
    ++r;
  }
  for (int i = r; i < static_cast<int>(table.size()); ++i)
    if (table[i][cols]) return false;
  table.resize(r);
  return true;
}

// Vertex cover of the monomial graph; exact branch and bound for up to 64
// vertices within a step cap, greedy otherwise.
std::vector<int> vertex_cover(int n, const std::vector<std::vector<bool>>& adj, const std::vector<bool>& forced) {
  std::vector<int> greedy;
  {
    std::vector<bool> in(n, false);
    for (int v = 0; v < n; ++v)
      if (forced[v]) in[v] = true;
    for (;;) {
      int best = -1, best_deg = 0;
      for (int v = 0; v < n; ++v) {
        if (in[v]) continue;
        int deg = 0;
        for (int w = 0; w < n; ++w)
          if (w != v && adj[v][w] && !in[w]) ++deg;
        if (deg > best_deg) {
          best_deg = deg;
          best = v;
        }
      }
      if (best < 0) break;
      in[best] = true;
    }
    for (int v = 0; v < n; ++v)
      if (in[v]) greedy.push_back(v);
  }
  if (n > 64) return greedy;

  std::vector<std::uint64_t> nb(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (v != w && adj[v][w]) nb[v] |= std::uint64_t{1} << w;
  std::uint64_t forced_mask = 0;
  for (int v = 0; v < n; ++v)
    if (forced[v]) forced_mask |= std::uint64_t{1} << v;

  std::uint64_t best_mask = 0;
  for (int v : greedy) best_mask |= std::uint64_t{1} << v;
  int best_size = static_cast<int>(greedy.size());
  std::uint64_t steps = 0;
  const std::uint64_t cap = 2'000'000;

  // alive: vertices not yet decided; cover: chosen so far.
  auto rec = [&](auto&& self, std::uint64_t alive, std::uint64_t cover) -> void {
    if (++steps > cap) return;
    const int size = __builtin_popcountll(cover);
    if (size >= best_size) return;
    int v = -1, deg = 0, edges2 = 0;
    for (std::uint64_t a = alive; a; a &= a - 1) {
      const int w = __builtin_ctzll(a);
      const int dw = __builtin_popcountll(nb[w] & alive);
      edges2 += dw;
      if (dw > deg) {
        deg = dw;
        v = w;
      }
    }
    if (v < 0) {
      best_size = size;
      best_mask = cover;
      return;
    }
    // each extra vertex covers at most deg edges
    if (size + (edges2 / 2 + deg - 1) / deg >= best_size) return;
    const std::uint64_t bit = std::uint64_t{1} << v;
    self(self, alive & ~bit, cover | bit);
    const std::uint64_t nv = nb[v] & alive;
    self(self, alive & ~bit & ~nv, cover | nv);
  };
  rec(rec, ((n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1)) & ~forced_mask, forced_mask);

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1) out.push_back(v);
  return out;
}

}  // namespace

SearchResult solve_form_preserving(const std::vector<Matrix>& basis, const Matrix& form,
                                   std::optional<std::uint64_t> base_q, const SearchOptions& opts,
                                   FormSolverStats* stats) {
  SearchResult res;
  res.method = "form-solver";
  res.dimension = static_cast<int>(basis.size());
  if (basis.empty()) {
    res.status = Status::NotFound;
    res.exhaustive = true;
    res.note = "empty span";
    return res;
  }
  const FieldSpec f = field_of(form);
  const std::uint32_t p = f.p();
  const int k = f.k();
  const int d = static_cast<int>(basis.size());
  const int nvar = d * k;
  const int n = static_cast<int>(form.rows());
  const Matrix J = bind(form, f);

  auto sig = [&](const Matrix& m) { return base_q ? conj_transpose(m, *base_q) : transpose(m); };

  std::vector<Matrix> C;
  C.reserve(nvar);
  const FieldElement gen = FieldElement::generator(f);
  for (int i = 0; i < d; ++i) {
    FieldElement e = FieldElement::one(f);
    for (int l = 0; l < k; ++l) {
      C.push_back(e * bind(basis[i], f));
      e *= gen;
    }
  }
  std::vector<Matrix> T(nvar), JC(nvar);
  for (int u = 0; u < nvar; ++u) {
    T[u] = sig(C[u]);
    JC[u] = J * C[u];
  }

  // Monomial columns y_u y_v, u <= v.
  std::vector<std::pair<int, int>> monos;
  for (int u = 0; u < nvar; ++u)
    for (int v = u; v < nvar; ++v) monos.push_back({u, v});
  const int nm = static_cast<int>(monos.size());
  std::vector<Row> table(static_cast<std::size_t>(n) * n * k, Row(nm + 1, 0));
  for (int m = 0; m < nm; ++m) {
    const auto [u, v] = monos[m];
    Matrix coef = T[u] * JC[v];
    if (u != v) coef += T[v] * JC[u];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto c = coef(i, j).coeffs();
        for (int e = 0; e < k; ++e) table[(i * n + j) * k + e][m] = c[e];
      }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto c = J(i, j).coeffs();
      for (int e = 0; e < k; ++e) table[(i * n + j) * k + e][nm] = c[e];
    }
  FormSolverStats st;
  st.variables = nvar;
  if (!reduce_table(table, p)) {
    res.status = Status::NotFound;
    res.exhaustive = true;
    res.note = "quadric system inconsistent after elimination";
    if (stats) *stats = st;
    return res;
  }
  st.equations = static_cast<int>(table.size());

  std::vector<Quadric> quads;
  std::vector<std::vector<bool>> adj(nvar, std::vector<bool>(nvar, false));
  std::vector<bool> forced(nvar, false);
  for (const Row& r : table) {
    Quadric q;
    q.rhs = r[nm];
    for (int m = 0; m < nm; ++m) {
      if (!r[m]) continue;
      const auto [u, v] = monos[m];
      q.terms.push_back({u, v, r[m]});
      if (u == v) {
        forced[u] = true;
      } else {
        adj[u][v] = adj[v][u] = true;
      }
    }
    quads.push_back(std::move(q));
  }

  std::vector<int> cover = vertex_cover(nvar, adj, forced);
  std::stable_sort(cover.begin(), cover.end(), [&](int a, int b) {
    return std::count(adj[a].begin(), adj[a].end(), true) > std::count(adj[b].begin(), adj[b].end(), true);
  });
  st.cover = static_cast<int>(cover.size());
  std::vector<int> pos(nvar, std::numeric_limits<int>::max());
  for (int i = 0; i < static_cast<int>(cover.size()); ++i) pos[cover[i]] = i;
  const int depth_max = static_cast<int>(cover.size());
  std::vector<std::vector<int>> activate(depth_max + 1);
  for (int qi = 0; qi < static_cast<int>(quads.size()); ++qi) {
    int depth = 0;
    for (const Term& t : quads[qi].terms) depth = std::max(depth, std::min(pos[t.u], pos[t.v]) + 1);
    quads[qi].depth = depth;
    activate[depth].push_back(qi);
  }

  std::vector<std::uint32_t> value(nvar, 0);
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::optional<std::vector<std::uint32_t>> found;

  auto linearize = [&](const Quadric& q) {
    Row r(nvar + 1, 0);
    for (const Term& t : q.terms) {
      const bool u_first = pos[t.u] <= pos[t.v];
      const int fixed = u_first ? t.u : t.v;
      const int other = u_first ? t.v : t.u;
      r[other] = static_cast<std::uint32_t>((r[other] + std::uint64_t{t.c} * value[fixed]) % p);
    }
    r[nvar] = q.rhs;
    return r;
  };

  auto dfs = [&](auto&& self, int depth, const LinearSystem& sys) -> void {
    if (found || out_of_budget) return;
    if (depth == depth_max) {
      found = sys.solution();
      return;
    }
    const int var = cover[depth];
    for (std::uint32_t a = 0; a < p; ++a) {
      if (++nodes > opts.budget) {
        out_of_budget = true;
        return;
      }
      value[var] = a;
      LinearSystem next = sys;
      Row fix(nvar + 1, 0);
      fix[var] = 1;
      fix[nvar] = a;
      bool ok = next.add(std::move(fix));
      for (int qi : activate[depth + 1]) {
        if (!ok) break;
        ok = next.add(linearize(quads[qi]));
      }
      if (ok) self(self, depth + 1, next);
      if (found || out_of_budget) return;
    }
  };

  LinearSystem root(nvar, p);
  bool ok = true;
  for (int qi : activate[0]) ok = ok && root.add(linearize(quads[qi]));
  if (ok) dfs(dfs, 0, root);
  st.nodes = nodes;
  if (stats) *stats = st;
  res.work = nodes;
  res.note = "variables=" + std::to_string(nvar) + " equations=" + std::to_string(st.equations) +
             " cover=" + std::to_string(st.cover);

  if (found) {
    Matrix g = zeros(f, n, n);
    for (int u = 0; u < nvar; ++u)
      if ((*found)[u]) g += FieldElement::from_int(f, (*found)[u]) * C[u];
    if (!equal(sig(g) * J * g, J)) throw std::logic_error("form solver produced a non-member");
    res.status = Status::Found;
    res.conjugator = g;
    return res;
  }
  if (out_of_budget) {
    res.status = Status::Unknown;
    return res;
  }
  res.status = Status::NotFound;
  res.exhaustive = true;
  return res;
}

}  // namespace cgw
