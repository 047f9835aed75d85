#include "umfw/embed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "umfw/canonical.hpp"

namespace umfw {

namespace {

std::shared_ptr<const FinStructure> share(const FinStructure& s) {
  return std::make_shared<const FinStructure>(s);
}

bool check_partial(const std::vector<int>& map, const std::vector<int>& partial) {
  if (partial.empty()) return true;
  for (size_t i = 0; i < partial.size(); ++i)
    if (partial[i] >= 0 && map[i] != partial[i]) return false;
  return true;
}

// Emit callback returns false to stop the enumeration early.
using Emit = std::function<bool(const std::vector<int>&)>;

// Relational kinds: depth-first over domain elements in a fixed processing
// order, choosing images in ascending element order.
void relational_embeddings(const FinStructure& a, const FinStructure& c,
                           const std::vector<int>& partial, const Emit& emit) {
  const int na = a.n, nc = c.n;
  if (na > nc) return;
  // Process LinOrder domains in rank order so monotonicity prunes early.
  std::vector<int> proc(na);
  for (int i = 0; i < na; ++i) proc[i] = i;
  if (a.kind == StructKind::LinOrder)
    std::sort(proc.begin(), proc.end(), [&](int x, int y) { return a.order[x] < a.order[y]; });

  std::vector<int> map(na, -1);
  std::vector<char> used(nc, 0);
  bool stop = false;

  std::function<void(int)> rec = [&](int depth) {
    if (stop) return;
    if (depth == na) {
      if (check_partial(map, partial) && !emit(map)) stop = true;
      return;
    }
    int d = proc[depth];
    for (int img = 0; img < nc && !stop; ++img) {
      if (used[img]) continue;
      if (!partial.empty() && partial[d] >= 0 && partial[d] != img) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        int e = proc[k];
        if (kind_is_graph(a.kind) && a.has_edge(d, e) != c.has_edge(img, map[e])) ok = false;
        if (ok && kind_is_ordered(a.kind) &&
            (a.order[d] < a.order[e]) != (c.order[img] < c.order[map[e]]))
          ok = false;
      }
      if (!ok) continue;
      map[d] = img;
      used[img] = 1;
      rec(depth + 1);
      map[d] = -1;
      used[img] = 0;
    }
  };
  rec(0);
}

std::vector<int> ba_element_map(const FinStructure& a, const FinStructure& c,
                                const std::vector<int>& atom_to_a) {
  // atom_to_a[j] = the A-atom whose image block contains C-atom j.
  std::vector<int> block(a.atoms, 0);
  for (int j = 0; j < c.atoms; ++j) block[atom_to_a[j]] |= 1 << j;
  std::vector<int> map(a.n);
  for (int x = 0; x < a.n; ++x) {
    int y = 0;
    for (int i = 0; i < a.atoms; ++i)
      if ((x >> i) & 1) y |= block[i];
    map[x] = y;
  }
  return map;
}

// Unital boolean-algebra embeddings correspond to surjections from the
// codomain atoms onto the domain atoms (blocks = atom preimages).
void boolalg_embeddings(const FinStructure& a, const FinStructure& c,
                        const std::vector<int>& partial, const Emit& emit) {
  if (a.atoms > c.atoms) return;
  std::vector<int> f(c.atoms, -1);
  std::vector<int> hits(a.atoms, 0);
  bool stop = false;
  std::function<void(int)> rec = [&](int j) {
    if (stop) return;
    if (j == c.atoms) {
      for (int i = 0; i < a.atoms; ++i)
        if (!hits[i]) return;  // not surjective: some block empty
      auto map = ba_element_map(a, c, f);
      if (!check_partial(map, partial)) return;
      if (kind_is_ordered(a.kind)) {
        for (int x = 0; x < a.n; ++x)
          for (int y = 0; y < a.n; ++y)
            if (a.less(x, y) != c.less(map[x], map[y]) && x != y) return;
      }
      if (!emit(map)) stop = true;
      return;
    }
    int remaining = c.atoms - j;
    int missing = 0;
    for (int i = 0; i < a.atoms; ++i)
      if (!hits[i]) ++missing;
    if (missing > remaining) return;  // cannot reach surjectivity
    for (int i = 0; i < a.atoms && !stop; ++i) {
      f[j] = i;
      ++hits[i];
      rec(j + 1);
      --hits[i];
      f[j] = -1;
    }
  };
  rec(0);
}

int vs_map_element(const FinStructure& a, const FinStructure& c, const std::vector<int>& img,
                   int x) {
  auto d = vs_digits(a, x);
  int y = 0;
  for (int i = 0; i < a.dim; ++i)
    if (d[i]) y = vs_add(c, y, vs_scale(c, d[i], img[i]));
  return y;
}

void vecspace_embeddings(const FinStructure& a, const FinStructure& c,
                         const std::vector<int>& partial, const Emit& emit) {
  if (a.p != c.p || a.dim > c.dim) return;
  std::vector<int> img(a.dim, -1);
  std::vector<char> in_span(c.n, 0);
  in_span[0] = 1;
  std::vector<int> span = {0};
  bool stop = false;

  std::function<void(int)> rec = [&](int depth) {
    if (stop) return;
    if (depth == a.dim) {
      std::vector<int> map(a.n);
      for (int x = 0; x < a.n; ++x) map[x] = vs_map_element(a, c, img, x);
      if (!check_partial(map, partial)) return;
      if (kind_is_ordered(a.kind)) {
        for (int x = 0; x < a.n; ++x)
          for (int y = 0; y < a.n; ++y)
            if (x != y && a.less(x, y) != c.less(map[x], map[y])) return;
      }
      if (!emit(map)) stop = true;
      return;
    }
    for (int cand = 1; cand < c.n && !stop; ++cand) {
      if (in_span[cand]) continue;
      img[depth] = cand;
      std::vector<int> added;
      for (size_t si = 0, n0 = span.size(); si < n0; ++si)
        for (int coef = 1; coef < c.p; ++coef) {
          int y = vs_add(c, span[si], vs_scale(c, coef, cand));
          if (!in_span[y]) {
            in_span[y] = 1;
            span.push_back(y);
            added.push_back(y);
          }
        }
      rec(depth + 1);
      for (int y : added) in_span[y] = 0;
      span.resize(span.size() - added.size());
      img[depth] = -1;
    }
  };
  rec(0);
}

void for_each_embedding(const FinStructure& a, const FinStructure& c,
                        const std::vector<int>& partial, const Emit& emit) {
  if (a.kind != c.kind) fail(err::KindMismatch, "embedding endpoints must share a kind");
  if (kind_is_boolalg(a.kind))
    boolalg_embeddings(a, c, partial, emit);
  else if (kind_is_vecspace(a.kind))
    vecspace_embeddings(a, c, partial, emit);
  else
    relational_embeddings(a, c, partial, emit);
}

// Restricted-growth-string enumeration of set partitions into exactly k blocks.
void for_each_partition(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> rgs(m, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (m - i < k - used) return;
    if (i == m) {
      if (used == k) fn(rgs);
      return;
    }
    for (int b = 0; b < std::min(used + 1, k); ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
}

// All rank-k row-reduced-echelon bases over F_p in ambient dimension d.
void for_each_rref_subspace(const FinStructure& v, int k,
                            const std::function<void(const std::vector<int>&)>& fn) {
  const int d = v.dim, p = v.p;
  std::vector<int> pivots(k);
  std::function<void(int, int)> choose = [&](int idx, int from) {
    if (idx == k) {
      // Rows as digit vectors; free entries at columns right of the pivot
      // that are not pivots themselves.
      std::vector<std::pair<int, int>> free_cells;
      for (int r = 0; r < k; ++r)
        for (int col = pivots[r] + 1; col < d; ++col)
          if (std::find(pivots.begin(), pivots.end(), col) == pivots.end())
            free_cells.push_back({r, col});
      std::vector<std::vector<int>> rows(k, std::vector<int>(d, 0));
      for (int r = 0; r < k; ++r) rows[r][pivots[r]] = 1;
      std::function<void(size_t)> fill = [&](size_t cell) {
        if (cell == free_cells.size()) {
          std::vector<int> basis(k);
          for (int r = 0; r < k; ++r) basis[r] = vs_pack(v, rows[r]);
          fn(basis);
          return;
        }
        auto [r, col] = free_cells[cell];
        for (int val = 0; val < p; ++val) {
          rows[r][col] = val;
          fill(cell + 1);
        }
        rows[r][col] = 0;
      };
      fill(0);
      return;
    }
    for (int col = from; col < d; ++col) {
      pivots[idx] = col;
      choose(idx + 1, col + 1);
    }
  };
  choose(0, 0);
}

std::vector<int> span_of(const FinStructure& v, const std::vector<int>& basis) {
  std::vector<char> mark(v.n, 0);
  mark[0] = 1;
  std::vector<int> span = {0};
  for (int b : basis) {
    for (size_t i = 0, n0 = span.size(); i < n0; ++i)
      for (int coef = 1; coef < v.p; ++coef) {
        int y = vs_add(v, span[i], vs_scale(v, coef, b));
        if (!mark[y]) {
          mark[y] = 1;
          span.push_back(y);
        }
      }
  }
  std::sort(span.begin(), span.end());
  return span;
}

}  // namespace

bool is_valid_embedding(const FinStructure& a, const FinStructure& c,
                        const std::vector<int>& map) {
  if (a.kind != c.kind || int(map.size()) != a.n) return false;
  std::vector<char> used(c.n, 0);
  for (int x : map) {
    if (x < 0 || x >= c.n || used[x]) return false;
    used[x] = 1;
  }
  if (kind_is_graph(a.kind)) {
    for (int u = 0; u < a.n; ++u)
      for (int v = u + 1; v < a.n; ++v)
        if (a.has_edge(u, v) != c.has_edge(map[u], map[v])) return false;
  }
  if (kind_is_ordered(a.kind)) {
    for (int u = 0; u < a.n; ++u)
      for (int v = 0; v < a.n; ++v)
        if (u != v && a.less(u, v) != c.less(map[u], map[v])) return false;
  }
  if (kind_is_boolalg(a.kind)) {
    if (map[0] != 0 || map[a.n - 1] != c.n - 1) return false;
    for (int x = 0; x < a.n; ++x) {
      if (map[ba_compl(a, x)] != ba_compl(c, map[x])) return false;
      for (int y = 0; y < a.n; ++y) {
        if (map[ba_meet(x, y)] != ba_meet(map[x], map[y])) return false;
        if (map[ba_join(x, y)] != ba_join(map[x], map[y])) return false;
      }
    }
  }
  if (kind_is_vecspace(a.kind)) {
    if (a.p != c.p || map[0] != 0) return false;
    for (int x = 0; x < a.n; ++x) {
      for (int y = 0; y < a.n; ++y)
        if (map[vs_add(a, x, y)] != vs_add(c, map[x], map[y])) return false;
      for (int coef = 0; coef < a.p; ++coef)
        if (map[vs_scale(a, coef, x)] != vs_scale(c, coef, map[x])) return false;
    }
  }
  return true;
}

std::vector<Embedding> enumerate_embeddings_extending(const FinStructure& a,
                                                      const FinStructure& c,
                                                      const std::vector<int>& partial) {
  auto da = share(a);
  auto dc = share(c);
  std::vector<std::vector<int>> maps;
  for_each_embedding(a, c, partial, [&](const std::vector<int>& m) {
    maps.push_back(m);
    return true;
  });
  std::sort(maps.begin(), maps.end());
  std::vector<Embedding> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.push_back(Embedding{da, dc, std::move(m)});
  return out;
}

std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& c) {
  return enumerate_embeddings_extending(a, c, {});
}

bool embedding_exists(const FinStructure& a, const FinStructure& c) {
  bool found = false;
  for_each_embedding(a, c, {}, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

CopySet enumerate_copies(const FinStructure& a, const FinStructure& c) {
  if (a.kind != c.kind) fail(err::KindMismatch, "copy pattern and base must share a kind");
  CopySet cs;
  cs.base = share(c);
  cs.pattern = share(a);
  std::set<std::vector<int>> images;

  if (a.kind == StructKind::Set || a.kind == StructKind::LinOrder) {
    if (a.n <= c.n) {
      // every k-subset carries exactly one copy
      std::vector<int> comb(a.n);
      std::function<void(int, int)> rec = [&](int idx, int from) {
        if (idx == a.n) {
          images.insert(comb);
          return;
        }
        for (int x = from; x <= c.n - (a.n - idx); ++x) {
          comb[idx] = x;
          rec(idx + 1, x + 1);
        }
      };
      rec(0, 0);
    }
  } else if (a.kind == StructKind::BoolAlg) {
    for_each_partition(c.atoms, a.atoms, [&](const std::vector<int>& rgs) {
      std::vector<int> block(a.atoms, 0);
      for (int j = 0; j < c.atoms; ++j) block[rgs[j]] |= 1 << j;
      std::vector<int> universe;
      for (int x = 0; x < a.n; ++x) {
        int y = 0;
        for (int i = 0; i < a.atoms; ++i)
          if ((x >> i) & 1) y |= block[i];
        universe.push_back(y);
      }
      std::sort(universe.begin(), universe.end());
      images.insert(universe);
    });
  } else if (a.kind == StructKind::VecSpace) {
    if (a.p == c.p && a.dim <= c.dim)
      for_each_rref_subspace(c, a.dim, [&](const std::vector<int>& basis) {
        images.insert(span_of(c, basis));
      });
  } else {
    // graph and ordered kinds: deduplicate embedding images
    for_each_embedding(a, c, {}, [&](const std::vector<int>& m) {
      std::vector<int> img = m;
      std::sort(img.begin(), img.end());
      images.insert(img);
      return true;
    });
  }
  cs.copies.assign(images.begin(), images.end());
  return cs;
}

std::optional<std::vector<int>> are_isomorphic(const FinStructure& s, const FinStructure& t) {
  if (s.kind != t.kind) fail(err::KindMismatch, "isomorphism requires equal kinds");
  if (s.n != t.n) return std::nullopt;
  CanonicalForm cs = canonical_form(s), ct = canonical_form(t);
  if (cs.bytes != ct.bytes) return std::nullopt;
  std::vector<int> inv_t(t.n);
  for (int i = 0; i < t.n; ++i) inv_t[ct.relabel[i]] = i;
  std::vector<int> iso(s.n);
  for (int i = 0; i < s.n; ++i) iso[i] = inv_t[cs.relabel[i]];
  if (!is_valid_embedding(s, t, iso))
    fail(err::CriteriaDisagree, "canonical relabelings did not compose to an isomorphism");
  return iso;
}

PermGroup automorphism_group(const FinStructure& s) {
  validate_structure(s);
  if (s.kind == StructKind::Set) return PermGroup::symmetric(s.n);
  if (s.kind == StructKind::LinOrder) return PermGroup::trivial(s.n);
  if (s.kind == StructKind::BoolAlg) {
    std::vector<Perm> elems;
    std::vector<int> ap(s.atoms);
    for (int i = 0; i < s.atoms; ++i) ap[i] = i;
    do {
      elems.push_back(ba_map_from_atom_perm(s.atoms, ap));
    } while (std::next_permutation(ap.begin(), ap.end()));
    return PermGroup::from_elements(s.n, std::move(elems));
  }
  if (s.kind == StructKind::VecSpace) {
    std::vector<Perm> elems = general_linear_maps(s.dim, s.p);
    return PermGroup::from_elements(s.n, std::move(elems));
  }
  // graph and ordered kinds: bijective embeddings into self
  std::vector<Perm> elems;
  for_each_embedding(s, s, {}, [&](const std::vector<int>& m) {
    elems.push_back(m);
    return true;
  });
  return PermGroup::from_elements(s.n, std::move(elems));
}

GeneratedSub induced_substructure(const FinStructure& s, const std::vector<int>& universe) {
  std::vector<int> u = universe;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  GeneratedSub out;
  FinStructure& sub = out.sub;
  std::vector<int> incl;  // new element -> old element

  switch (kind_reduct(s.kind)) {
    case StructKind::Set:
    case StructKind::Graph: {
      int k = int(u.size());
      sub.kind = kind_reduct(s.kind);
      sub.n = k;
      incl = u;
      if (kind_is_graph(s.kind)) {
        sub.adj.assign(k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (s.has_edge(u[i], u[j])) sub.adj[i] |= uint64_t{1} << j;
      }
      break;
    }
    case StructKind::BoolAlg: {
      // Atoms of the subalgebra = minimal nonzero members.
      std::vector<int> atoms;
      for (int x : u) {
        if (x == 0) continue;
        bool minimal = true;
        for (int y : u)
          if (y != 0 && y != x && (y & x) == y) { minimal = false; break; }
        if (minimal) atoms.push_back(x);
      }
      std::sort(atoms.begin(), atoms.end());
      int k = int(atoms.size());
      sub.kind = StructKind::BoolAlg;
      sub.atoms = k;
      sub.n = 1 << k;
      incl.resize(sub.n);
      for (int x = 0; x < sub.n; ++x) {
        int y = 0;
        for (int i = 0; i < k; ++i)
          if ((x >> i) & 1) y |= atoms[i];
        incl[x] = y;
      }
      break;
    }
    case StructKind::VecSpace: {
      // Greedy basis over the ascending universe.
      FinStructure amb = s;
      std::vector<int> basis;
      std::vector<char> in_span(s.n, 0);
      in_span[0] = 1;
      std::vector<int> span = {0};
      for (int x : u) {
        if (in_span[x]) continue;
        basis.push_back(x);
        for (size_t i = 0, n0 = span.size(); i < n0; ++i)
          for (int coef = 1; coef < s.p; ++coef) {
            int y = vs_add(amb, span[i], vs_scale(amb, coef, x));
            if (!in_span[y]) {
              in_span[y] = 1;
              span.push_back(y);
            }
          }
      }
      int k = int(basis.size());
      sub.kind = StructKind::VecSpace;
      sub.dim = k;  // k = 0 yields the zero space
      sub.p = s.p;
      sub.n = 1;
      for (int i = 0; i < sub.dim; ++i) sub.n *= s.p;
      incl.resize(sub.n);
      for (int x = 0; x < sub.n; ++x) {
        auto d = vs_digits(sub, x);
        int y = 0;
        for (int i = 0; i < k; ++i)
          if (d[i]) y = vs_add(amb, y, vs_scale(amb, d[i], basis[i]));
        incl[x] = y;
      }
      break;
    }
    default:
      fail(err::InvalidDescriptor, "unsupported kind for induced substructure");
  }

  if (kind_is_ordered(s.kind)) {
    sub.kind = kind_expansion(sub.kind);
    // Transport the ambient order: rank elements by their old ranks.
    std::vector<std::pair<int, int>> by_rank;
    for (int i = 0; i < sub.n; ++i) by_rank.push_back({s.order[incl[i]], i});
    std::sort(by_rank.begin(), by_rank.end());
    sub.order.assign(sub.n, 0);
    for (int r = 0; r < sub.n; ++r) sub.order[by_rank[r].second] = r;
  }
  validate_structure(sub);
  out.inclusion = Embedding{share(sub), share(s), incl};
  if (!is_valid_embedding(sub, s, incl))
    fail(err::CriteriaDisagree, "induced substructure inclusion failed validation");
  return out;
}

GeneratedSub substructure_generated(const FinStructure& s, const std::vector<int>& seed) {
  for (int x : seed)
    if (x < 0 || x >= s.n) fail(err::InvalidDescriptor, "seed element out of range");
  std::vector<char> in(s.n, 0);
  std::vector<int> u;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      u.push_back(x);
    }
  };
  for (int x : seed) add(x);
  if (kind_is_boolalg(s.kind)) {
    add(0);
    add(s.n - 1);
    for (size_t i = 0; i < u.size(); ++i) {
      add(ba_compl(s, u[i]));
      for (size_t j = 0; j <= i; ++j) {
        add(ba_meet(u[i], u[j]));
        add(ba_join(u[i], u[j]));
      }
    }
  } else if (kind_is_vecspace(s.kind)) {
    add(0);
    for (size_t i = 0; i < u.size(); ++i) {
      for (int coef = 1; coef < s.p; ++coef) add(vs_scale(s, coef, u[i]));
      for (size_t j = 0; j <= i; ++j) add(vs_add(s, u[i], u[j]));
    }
  }
  if (u.empty()) fail(err::InvalidDescriptor, "empty seed generates no structure for this kind");
  return induced_substructure(s, u);
}

std::vector<std::vector<int>> all_substructure_universes(const FinStructure& s) {
  std::vector<std::vector<int>> out;
  if (kind_is_boolalg(s.kind)) {
    for (int k = 1; k <= s.atoms; ++k)
      for_each_partition(s.atoms, k, [&](const std::vector<int>& rgs) {
        std::vector<int> block(k, 0);
        for (int j = 0; j < s.atoms; ++j) block[rgs[j]] |= 1 << j;
        std::vector<int> universe;
        for (int x = 0; x < (1 << k); ++x) {
          int y = 0;
          for (int i = 0; i < k; ++i)
            if ((x >> i) & 1) y |= block[i];
          universe.push_back(y);
        }
        std::sort(universe.begin(), universe.end());
        out.push_back(universe);
      });
  } else if (kind_is_vecspace(s.kind)) {
    FinStructure red = s;
    out.push_back({0});  // the zero subspace
    for (int k = 1; k <= s.dim; ++k)
      for_each_rref_subspace(red, k, [&](const std::vector<int>& basis) {
        out.push_back(span_of(red, basis));
      });
  } else {
    if (s.n > 20) fail(err::BoundTooLarge, "too many subsets to enumerate");
    for (int mask = 1; mask < (1 << s.n); ++mask) {
      std::vector<int> u;
      for (int i = 0; i < s.n; ++i)
        if ((mask >> i) & 1) u.push_back(i);
      out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace umfw
