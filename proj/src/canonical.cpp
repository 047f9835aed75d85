#include "umfw/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace umfw {

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

static void put_int(std::string& s, int v) {
  // 4-byte big-endian; values here are small and non-negative.
  for (int shift = 24; shift >= 0; shift -= 8) s.push_back(char((v >> shift) & 0xff));
}

static std::string header_bytes(const FinStructure& s) {
  std::string b;
  b.push_back(char(int(s.kind)));
  put_int(b, s.n);
  put_int(b, s.atoms);
  put_int(b, s.dim);
  put_int(b, s.p);
  return b;
}

FinStructure relabel_structure(const FinStructure& s, const std::vector<int>& pi) {
  FinStructure t = s;
  if (kind_is_graph(s.kind)) {
    t.adj.assign(s.n, 0);
    for (int u = 0; u < s.n; ++u)
      for (int v = 0; v < s.n; ++v)
        if (s.has_edge(u, v)) t.adj[pi[u]] |= uint64_t{1} << pi[v];
  }
  if (kind_is_ordered(s.kind)) {
    t.order.assign(s.n, 0);
    for (int e = 0; e < s.n; ++e) t.order[pi[e]] = s.order[e];
  }
  return t;
}

// ---- graph canonicalization: refinement + minimal-code backtracking ----

namespace {

// Stable 1-dimensional refinement: colors split by multiset of neighbor colors.
std::vector<int> refine_colors(const FinStructure& s, std::vector<int> color) {
  const int n = s.n;
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> key;
      key.push_back(color[v]);
      std::vector<int> neigh;
      for (int u = 0; u < n; ++u)
        if (s.has_edge(v, u)) neigh.push_back(color[u]);
      std::sort(neigh.begin(), neigh.end());
      key.insert(key.end(), neigh.begin(), neigh.end());
      sig[v] = {key, v};
    }
    std::vector<std::pair<std::vector<int>, int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(n);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sorted[i].first != sorted[i - 1].first) ++c;
      next[sorted[i].second] = c;
    }
    if (next == color) return color;
    color = std::move(next);
  }
}

std::string graph_code(const FinStructure& s, const std::vector<int>& pos) {
  // pos[v] = canonical position of vertex v; code = row-major upper triangle.
  const int n = s.n;
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::string code;
  code.reserve((n * (n - 1)) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      code.push_back(s.has_edge(at[i], at[j]) ? 1 : 0);
  return code;
}

struct GraphCanonSearch {
  const FinStructure& s;
  std::string best_code;
  std::vector<int> best_pos;
  bool have_best = false;

  explicit GraphCanonSearch(const FinStructure& g) : s(g) {}

  void run(std::vector<int> color) {
    color = refine_colors(s, color);
    // Find the first non-singleton color class.
    const int n = s.n;
    std::vector<std::vector<int>> classes;
    {
      int maxc = 0;
      for (int c : color) maxc = std::max(maxc, c);
      classes.assign(maxc + 1, {});
      for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);
    }
    int target = -1;
    for (size_t c = 0; c < classes.size(); ++c)
      if (classes[c].size() > 1) { target = int(c); break; }
    if (target < 0) {
      // Discrete coloring: positions are the colors themselves.
      std::string code = graph_code(s, color);
      if (!have_best || code < best_code) {
        best_code = code;
        best_pos = color;
        have_best = true;
      }
      return;
    }
    for (int v : classes[target]) {
      std::vector<int> next = color;
      // Individualize v: give it a fresh color just below its class.
      for (int u = 0; u < n; ++u)
        if (next[u] >= next[v] && u != v) next[u] += 1;
      run(std::move(next));
    }
  }
};

std::pair<std::string, std::vector<int>> canonical_graph(const FinStructure& s) {
  GraphCanonSearch search(s);
  search.run(std::vector<int>(s.n, 0));
  return {search.best_code, search.best_pos};
}

std::string order_code(const std::vector<int>& order) {
  std::string b;
  for (int r : order) put_int(b, r);
  return b;
}

}  // namespace

const std::vector<std::vector<int>>& general_linear_maps(int dim, int p) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(dim, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  FinStructure v = make_vecspace(dim, p);
  std::vector<std::vector<int>> maps;
  // Backtrack over images of the standard basis, keeping the image set
  // independent (span grows by factor p each step).
  std::vector<char> in_span(v.n, 0);
  std::vector<int> span = {0};
  in_span[0] = 1;

  std::vector<int> img(dim);
  std::function<void(int, std::vector<int>&, std::vector<char>&)> rec =
      [&](int depth, std::vector<int>& sp, std::vector<char>& ins) {
        if (depth == dim) {
          maps.push_back(vs_map_from_basis_images(v, img));
          return;
        }
        for (int cand = 1; cand < v.n; ++cand) {
          if (ins[cand]) continue;
          img[depth] = cand;
          std::vector<int> sp2 = sp;
          std::vector<char> ins2 = ins;
          for (int x : sp)
            for (int c = 1; c < p; ++c) {
              int y = vs_add(v, x, vs_scale(v, c, cand));
              if (!ins2[y]) { ins2[y] = 1; sp2.push_back(y); }
            }
          rec(depth + 1, sp2, ins2);
        }
      };
  rec(0, span, in_span);
  std::sort(maps.begin(), maps.end());
  auto res = cache.emplace(key, std::move(maps));
  return res.first->second;
}

std::vector<int> ba_map_from_atom_perm(int atoms, const std::vector<int>& atom_perm) {
  int n = 1 << atoms;
  std::vector<int> map(n);
  for (int x = 0; x < n; ++x) {
    int y = 0;
    for (int a = 0; a < atoms; ++a)
      if ((x >> a) & 1) y |= 1 << atom_perm[a];
    map[x] = y;
  }
  return map;
}

std::vector<int> vs_map_from_basis_images(const FinStructure& s, const std::vector<int>& images) {
  std::vector<int> map(s.n);
  for (int x = 0; x < s.n; ++x) {
    auto d = vs_digits(s, x);
    int y = 0;
    for (int i = 0; i < s.dim; ++i)
      if (d[i]) y = vs_add(s, y, vs_scale(s, d[i], images[i]));
    map[x] = y;
  }
  return map;
}

CanonicalForm canonical_form(const FinStructure& s) {
  validate_structure(s);
  CanonicalForm out;
  out.bytes = header_bytes(s);
  out.relabel.resize(s.n);
  for (int i = 0; i < s.n; ++i) out.relabel[i] = i;

  switch (s.kind) {
    case StructKind::Set:
      break;  // determined by n
    case StructKind::LinOrder:
      // Unique order type per cardinality; canonical rep has order[i] = i.
      out.relabel = s.order;
      break;
    case StructKind::Graph: {
      auto [code, pos] = canonical_graph(s);
      out.bytes += code;
      out.relabel = pos;
      break;
    }
    case StructKind::OrderedGraph: {
      // The order rigidifies: relabel by rank, then read the adjacency code.
      out.relabel = s.order;
      out.bytes += graph_code(s, out.relabel);
      break;
    }
    case StructKind::BoolAlg:
      break;  // determined by atom count
    case StructKind::OrderedBoolAlg: {
      // Minimize the order array over atom permutations.
      std::vector<int> atom_perm(s.atoms);
      for (int i = 0; i < s.atoms; ++i) atom_perm[i] = i;
      std::string best;
      bool have = false;
      do {
        auto m = ba_map_from_atom_perm(s.atoms, atom_perm);
        std::vector<int> ord(s.n);
        for (int e = 0; e < s.n; ++e) ord[m[e]] = s.order[e];
        std::string code = order_code(ord);
        if (!have || code < best) { best = code; have = true; out.relabel = m; }
      } while (std::next_permutation(atom_perm.begin(), atom_perm.end()));
      out.bytes += best;
      break;
    }
    case StructKind::VecSpace:
      break;  // determined by (dim, p)
    case StructKind::OrderedVecSpace: {
      const auto& gl = general_linear_maps(s.dim, s.p);
      std::string best;
      bool have = false;
      for (const auto& m : gl) {
        std::vector<int> ord(s.n);
        for (int e = 0; e < s.n; ++e) ord[m[e]] = s.order[e];
        std::string code = order_code(ord);
        if (!have || code < best) { best = code; have = true; out.relabel = m; }
      }
      out.bytes += best;
      break;
    }
  }
  return out;
}

}  // namespace umfw
