#include "umfw/fraisse.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "umfw/canonical.hpp"

namespace umfw {

namespace {

std::shared_ptr<const FinStructure> share(const FinStructure& s) {
  return std::make_shared<const FinStructure>(s);
}

std::vector<std::vector<int>> seeds_in_scan_order(const FinStructure& s) {
  // Nonempty seeds ordered by (size, lex); capped universes only.
  std::vector<std::vector<int>> seeds;
  if (s.n > 16) fail(err::BoundTooLarge, "member too large for seed enumeration");
  for (int mask = 1; mask < (1 << s.n); ++mask) {
    std::vector<int> seed;
    for (int i = 0; i < s.n; ++i)
      if ((mask >> i) & 1) seed.push_back(i);
    seeds.push_back(seed);
  }
  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return seeds;
}

// Cheap per-size scan limits: class enumeration cost explodes for graphs.
int scan_limit(StructKind kind) {
  switch (kind) {
    case StructKind::Graph: return 5;
    case StructKind::OrderedGraph: return 4;
    default: return 64;
  }
}

// Deterministic linear extension of the union of two chains sharing their
// common part; empty when the union has a cycle (cannot happen for chains
// glued along a common subchain, but checked anyway).
std::vector<int> merge_orders(int n, const std::vector<std::vector<int>>& chains) {
  std::vector<std::vector<char>> pred(n, std::vector<char>(n, 0));
  std::vector<int> indeg(n, 0);
  for (const auto& ch : chains)
    for (size_t t = 0; t + 1 < ch.size(); ++t)
      if (!pred[ch[t]][ch[t + 1]]) {
        pred[ch[t]][ch[t + 1]] = 1;
        ++indeg[ch[t + 1]];
      }
  std::vector<int> rank(n, -1), ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int next = 0;
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<int>());
    int v = ready.back();
    ready.pop_back();
    rank[v] = next++;
    for (int u = 0; u < n; ++u)
      if (pred[v][u] && --indeg[u] == 0) ready.push_back(u);
  }
  if (next != n) return {};
  return rank;
}

std::vector<int> chain_of_structure(const FinStructure& s, const std::vector<int>& elem_map) {
  // Images of s's elements listed in s-order.
  std::vector<int> chain(s.n);
  for (int e = 0; e < s.n; ++e) chain[s.order[e]] = elem_map[e];
  return chain;
}

// Solve for the coordinates of x in the given independent set (mod p).
std::vector<int> coords_in_basis(const FinStructure& v, const std::vector<int>& basis, int x) {
  int k = int(basis.size());
  int d = v.dim;
  // Gaussian elimination on [basis | x] over F_p.
  std::vector<std::vector<int>> m(d, std::vector<int>(k + 1, 0));
  for (int c = 0; c < k; ++c) {
    auto dg = vs_digits(v, basis[c]);
    for (int r = 0; r < d; ++r) m[r][c] = dg[r];
  }
  auto dx = vs_digits(v, x);
  for (int r = 0; r < d; ++r) m[r][k] = dx[r];
  auto inv_mod = [&](int a) {
    for (int t = 1; t < v.p; ++t)
      if (a * t % v.p == 1) return t;
    return 0;
  };
  std::vector<int> pivot_row(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < d; ++col) {
    int pr = -1;
    for (int r = row; r < d; ++r)
      if (m[r][col] != 0) { pr = r; break; }
    if (pr < 0) return {};  // dependent, should not happen
    std::swap(m[row], m[pr]);
    int inv = inv_mod(m[row][col]);
    for (int c = col; c <= k; ++c) m[row][c] = m[row][c] * inv % v.p;
    for (int r = 0; r < d; ++r)
      if (r != row && m[r][col] != 0) {
        int f = m[r][col];
        for (int c = col; c <= k; ++c) m[r][c] = ((m[r][c] - f * m[row][c]) % v.p + v.p) % v.p;
      }
    pivot_row[col] = row;
    ++row;
  }
  for (int r = row; r < d; ++r)
    if (m[r][k] != 0) return {};  // x outside the span
  std::vector<int> coords(k, 0);
  for (int c = 0; c < k; ++c) coords[c] = m[pivot_row[c]][k];
  return coords;
}

// Free / pushout amalgams for the kinds where one is canonical.  Returns
// nullopt for kinds handled by the scanning search.
std::optional<AmalgamWitness> constructive_amalgam(const ClassDescriptor& kd,
                                                   const FinStructure& a, const FinStructure& b,
                                                   const FinStructure& c, const Embedding& i,
                                                   const Embedding& j) {
  StructKind kind = kd.kind;
  if (kind == StructKind::Set || kind == StructKind::Graph || kind == StructKind::LinOrder ||
      kind == StructKind::OrderedGraph) {
    int n = b.n + c.n - a.n;
    std::vector<int> kmap(b.n), lmap(c.n, -1);
    std::iota(kmap.begin(), kmap.end(), 0);
    for (int x = 0; x < a.n; ++x) lmap[j.map[x]] = i.map[x];
    int fresh = b.n;
    for (int y = 0; y < c.n; ++y)
      if (lmap[y] < 0) lmap[y] = fresh++;
    std::vector<std::pair<int, int>> edges;
    if (kind_is_graph(kind)) {
      for (int u = 0; u < b.n; ++u)
        for (int v = u + 1; v < b.n; ++v)
          if (b.has_edge(u, v)) edges.push_back({u, v});
      // C-edges transported along l; edges inside the shared part coincide
      // with B-edges, repeated insertion is harmless.
      for (int u = 0; u < c.n; ++u)
        for (int v = u + 1; v < c.n; ++v)
          if (c.has_edge(u, v)) edges.push_back({lmap[u], lmap[v]});
    }
    FinStructure d;
    if (kind == StructKind::Set) d = make_set(n);
    if (kind == StructKind::Graph) d = make_graph(n, edges);
    if (kind == StructKind::LinOrder || kind == StructKind::OrderedGraph) {
      auto rank = merge_orders(n, {chain_of_structure(b, kmap), chain_of_structure(c, lmap)});
      if (rank.empty()) return std::nullopt;
      d = kind == StructKind::LinOrder ? with_order(make_set(n), rank)
                                       : make_ordered_graph(n, edges, rank);
    }
    AmalgamWitness w{d, Embedding{share(b), share(d), kmap}, Embedding{share(c), share(d), lmap}};
    if (!kd.contains(d) || !amalgam_witness_valid(a, b, c, i, j, w)) return std::nullopt;
    return w;
  }

  if (kind == StructKind::BoolAlg) {
    // Fiber product of the dual atom surjections.
    auto block_owner = [](const FinStructure& big, const FinStructure& small,
                          const Embedding& e) {
      std::vector<int> owner(big.atoms, -1);
      for (int x = 0; x < small.atoms; ++x) {
        int img = e.map[1 << x];
        for (int bt = 0; bt < big.atoms; ++bt)
          if ((img >> bt) & 1) owner[bt] = x;
      }
      return owner;
    };
    auto fb = block_owner(b, a, i);
    auto fc = block_owner(c, a, j);
    std::vector<std::pair<int, int>> datoms;
    for (int bt = 0; bt < b.atoms; ++bt)
      for (int ct = 0; ct < c.atoms; ++ct)
        if (fb[bt] == fc[ct]) datoms.push_back({bt, ct});
    int m = int(datoms.size());
    if (m > 20) return std::nullopt;
    FinStructure d = make_boolalg(m);
    std::vector<int> bblock(b.atoms, 0), cblock(c.atoms, 0);
    for (int t = 0; t < m; ++t) {
      bblock[datoms[t].first] |= 1 << t;
      cblock[datoms[t].second] |= 1 << t;
    }
    auto expand = [&](const FinStructure& src, const std::vector<int>& blocks) {
      std::vector<int> map(src.n);
      for (int x = 0; x < src.n; ++x) {
        int y = 0;
        for (int at = 0; at < src.atoms; ++at)
          if ((x >> at) & 1) y |= blocks[at];
        map[x] = y;
      }
      return map;
    };
    AmalgamWitness w{d, Embedding{share(b), share(d), expand(b, bblock)},
                     Embedding{share(c), share(d), expand(c, cblock)}};
    if (!kd.contains(d) || !amalgam_witness_valid(a, b, c, i, j, w)) return std::nullopt;
    return w;
  }

  if (kind == StructKind::VecSpace) {
    // Amalgamated direct sum along bases adapted to the images of A.
    auto adapted_basis = [&](const FinStructure& big, const Embedding& e) {
      std::vector<int> basis;
      std::vector<char> in_span(big.n, 0);
      in_span[0] = 1;
      std::vector<int> span = {0};
      auto grow = [&](int v) {
        basis.push_back(v);
        for (size_t s0 = 0, n0 = span.size(); s0 < n0; ++s0)
          for (int coef = 1; coef < big.p; ++coef) {
            int y = vs_add(big, span[s0], vs_scale(big, coef, v));
            if (!in_span[y]) {
              in_span[y] = 1;
              span.push_back(y);
            }
          }
      };
      for (int t = 0; t < a.dim; ++t) {
        int code = 1;
        for (int q = 0; q < t; ++q) code *= a.p;
        grow(e.map[code]);
      }
      for (int v = 1; v < big.n && int(basis.size()) < big.dim; ++v)
        if (!in_span[v]) grow(v);
      return basis;
    };
    auto basis_b = adapted_basis(b, i);
    auto basis_c = adapted_basis(c, j);
    int dd = b.dim + c.dim - a.dim;
    FinStructure d = make_vecspace(dd, a.p);
    // Positions of the adapted basis vectors inside D.
    auto embed_via = [&](const FinStructure& src, const std::vector<int>& basis,
                         const std::vector<int>& positions) {
      std::vector<int> map(src.n);
      for (int x = 0; x < src.n; ++x) {
        auto coords = coords_in_basis(src, basis, x);
        int y = 0;
        for (size_t t = 0; t < coords.size(); ++t)
          if (coords[t]) {
            int e = 1;
            for (int q = 0; q < positions[t]; ++q) e *= d.p;
            y = vs_add(d, y, vs_scale(d, coords[t], e));
          }
        map[x] = y;
      }
      return map;
    };
    std::vector<int> pos_b(b.dim), pos_c(c.dim);
    for (int t = 0; t < b.dim; ++t) pos_b[t] = t;
    for (int t = 0; t < a.dim; ++t) pos_c[t] = t;
    for (int t = a.dim; t < c.dim; ++t) pos_c[t] = b.dim + (t - a.dim);
    AmalgamWitness w{d, Embedding{share(b), share(d), embed_via(b, basis_b, pos_b)},
                     Embedding{share(c), share(d), embed_via(c, basis_c, pos_c)}};
    if (!kd.contains(d) || !amalgam_witness_valid(a, b, c, i, j, w)) return std::nullopt;
    return w;
  }

  return std::nullopt;
}

}  // namespace

HereditaryReport check_hereditary(const ClassDescriptor& k, int bound) {
  HereditaryReport rep;
  for (const auto& member : enumerate_class(k, bound)) {
    ++rep.members_checked;
    for (const auto& seed : seeds_in_scan_order(member)) {
      GeneratedSub gs = substructure_generated(member, seed);
      ++rep.substructures_checked;
      if (!k.contains(gs.sub)) {
        rep.passed = false;
        rep.violation = HereditaryViolation{member, seed};
        return rep;
      }
    }
  }
  return rep;
}

std::optional<FinStructure> check_jep(const ClassDescriptor& k, const FinStructure& a,
                                      const FinStructure& b, int bound) {
  if (!k.contains(a) || !k.contains(b))
    fail(err::MembershipError, "joint embedding requires both structures in the class");
  int scan_to = std::min({bound, k.size_cap, scan_limit(k.kind)});
  for (int size = 1; size <= scan_to; ++size) {
    for (const auto& c : enumerate_class_exact(k, size))
      if (embedding_exists(a, c) && embedding_exists(b, c)) return c;
  }
  if (scan_to >= bound) return std::nullopt;
  // Truncated scan: fall back to the disjoint join where it is canonical.
  if (k.kind == StructKind::Graph || k.kind == StructKind::Set ||
      k.kind == StructKind::OrderedGraph) {
    int n = a.n + b.n;
    if (n <= bound) {
      std::vector<std::pair<int, int>> edges;
      if (kind_is_graph(k.kind)) {
        for (int u = 0; u < a.n; ++u)
          for (int v = u + 1; v < a.n; ++v)
            if (a.has_edge(u, v)) edges.push_back({u, v});
        for (int u = 0; u < b.n; ++u)
          for (int v = u + 1; v < b.n; ++v)
            if (b.has_edge(u, v)) edges.push_back({a.n + u, a.n + v});
      }
      FinStructure c;
      if (k.kind == StructKind::Set) {
        c = make_set(n);
      } else if (k.kind == StructKind::Graph) {
        c = make_graph(n, edges);
      } else {
        // concatenate the two orders: a's block below b's
        std::vector<int> order(n);
        for (int u = 0; u < a.n; ++u) order[u] = a.order[u];
        for (int u = 0; u < b.n; ++u) order[a.n + u] = a.n + b.order[u];
        c = make_ordered_graph(n, edges, order);
      }
      if (k.contains(c) && embedding_exists(a, c) && embedding_exists(b, c)) return c;
    }
  }
  fail(err::BoundTooLarge, "joint embedding scan truncated below the requested bound");
}

bool amalgam_witness_valid(const FinStructure& a, const FinStructure& b, const FinStructure& c,
                           const Embedding& i, const Embedding& j, const AmalgamWitness& w) {
  if (!is_valid_embedding(b, w.d, w.k.map) || !is_valid_embedding(c, w.d, w.l.map)) return false;
  for (int x = 0; x < a.n; ++x)
    if (w.k.map[i.map[x]] != w.l.map[j.map[x]]) return false;
  return true;
}

std::optional<AmalgamWitness> check_amalgamation(const ClassDescriptor& k, const FinStructure& a,
                                                 const FinStructure& b, const FinStructure& c,
                                                 const Embedding& i, const Embedding& j,
                                                 int bound) {
  if (!k.contains(a) || !k.contains(b) || !k.contains(c))
    fail(err::MembershipError, "amalgamation requires members of the class");
  if (!is_valid_embedding(a, b, i.map) || !is_valid_embedding(a, c, j.map))
    fail(err::InvalidEmbedding, "i and j must be embeddings A->B and A->C");
  int scan_to = std::min({bound, k.size_cap, scan_limit(k.kind)});

  for (int size = 1; size <= scan_to; ++size) {
    for (const auto& d : enumerate_class_exact(k, size)) {
      for (const auto& kk : enumerate_embeddings(b, d)) {
        // l is pinned on j[A] by the commuting square.
        std::vector<int> partial(c.n, -1);
        bool consistent = true;
        for (int x = 0; x < a.n; ++x) {
          int want = kk.map[i.map[x]];
          int at = j.map[x];
          if (partial[at] >= 0 && partial[at] != want) {
            consistent = false;
            break;
          }
          partial[at] = want;
        }
        if (!consistent) continue;
        auto ls = enumerate_embeddings_extending(c, d, partial);
        if (!ls.empty()) {
          AmalgamWitness w{d, kk, ls.front()};
          if (!amalgam_witness_valid(a, b, c, i, j, w))
            fail(err::CriteriaDisagree, "amalgam witness failed revalidation");
          return w;
        }
      }
    }
  }
  if (scan_to >= bound) return std::nullopt;
  if (auto w = constructive_amalgam(k, a, b, c, i, j)) return w;
  fail(err::BoundTooLarge, "amalgamation scan truncated below the requested bound");
}

GridReport fraisse_grid(const ClassDescriptor& k, int bound) {
  GridReport rep;
  auto hd = check_hereditary(k, bound);
  rep.instances += hd.substructures_checked;
  if (!hd.passed) {
    rep.passed = false;
    std::ostringstream os;
    os << "hereditary violation at " << structure_brief(hd.violation->member);
    rep.detail = os.str();
    return rep;
  }
  auto members = enumerate_class(k, bound);
  for (const auto& a : members)
    for (const auto& b : members) {
      ++rep.instances;
      int jep_bound = class_size_of(a) + class_size_of(b);
      std::optional<FinStructure> c;
      try {
        c = check_jep(k, a, b, jep_bound);
      } catch (const Error& e) {
        rep.passed = false;
        rep.detail = std::string("joint embedding: ") + e.what();
        return rep;
      }
      if (!c) {
        rep.passed = false;
        rep.detail = "joint embedding failed for " + structure_brief(a) + ", " + structure_brief(b);
        return rep;
      }
    }
  // Amalgamation: constructive amalgam first, scanning search as fallback.
  // i ranges over one embedding per copy image (pairs (i, j) are equivalent
  // up to a joint automorphism of A, so this covers every instance class).
  for (const auto& a : members)
    for (const auto& b : members) {
      auto is = enumerate_embeddings(a, b);
      if (is.empty()) continue;
      std::vector<Embedding> i_reps;
      {
        std::set<std::vector<int>> seen;
        for (const auto& i : is) {
          std::vector<int> img = i.map;
          std::sort(img.begin(), img.end());
          if (seen.insert(img).second) i_reps.push_back(i);
        }
      }
      for (const auto& c : members) {
        auto js = enumerate_embeddings(a, c);
        if (js.empty()) continue;
        int ap_bound = class_size_of(b) + class_size_of(c);
        for (const auto& i : i_reps)
          for (const auto& j : js) {
            ++rep.instances;
            std::optional<AmalgamWitness> w = constructive_amalgam(k, a, b, c, i, j);
            if (!w) {
              try {
                w = check_amalgamation(k, a, b, c, i, j, ap_bound);
              } catch (const Error& e) {
                rep.passed = false;
                rep.detail = std::string("amalgamation: ") + e.what();
                return rep;
              }
            }
            if (!w || !amalgam_witness_valid(a, b, c, i, j, *w)) {
              rep.passed = false;
              rep.detail = "amalgamation failed for " + structure_brief(a) + " -> " +
                           structure_brief(b) + ", " + structure_brief(c);
              return rep;
            }
          }
      }
    }
  return rep;
}

}  // namespace umfw
