#include "umfw/structures.hpp"

#include <algorithm>
#include <sstream>

namespace umfw {

const char* kind_name(StructKind k) {
  switch (k) {
    case StructKind::Set: return "set";
    case StructKind::LinOrder: return "linorder";
    case StructKind::Graph: return "graph";
    case StructKind::OrderedGraph: return "ordered_graph";
    case StructKind::BoolAlg: return "boolalg";
    case StructKind::OrderedBoolAlg: return "ordered_boolalg";
    case StructKind::VecSpace: return "vecspace";
    case StructKind::OrderedVecSpace: return "ordered_vecspace";
  }
  return "?";
}

StructKind kind_from_name(const std::string& s) {
  for (StructKind k : {StructKind::Set, StructKind::LinOrder, StructKind::Graph,
                       StructKind::OrderedGraph, StructKind::BoolAlg, StructKind::OrderedBoolAlg,
                       StructKind::VecSpace, StructKind::OrderedVecSpace})
    if (s == kind_name(k)) return k;
  fail(err::InvalidDescriptor, "unknown structure kind: " + s);
}

bool kind_is_ordered(StructKind k) {
  return k == StructKind::LinOrder || k == StructKind::OrderedGraph ||
         k == StructKind::OrderedBoolAlg || k == StructKind::OrderedVecSpace;
}
bool kind_is_graph(StructKind k) {
  return k == StructKind::Graph || k == StructKind::OrderedGraph;
}
bool kind_is_boolalg(StructKind k) {
  return k == StructKind::BoolAlg || k == StructKind::OrderedBoolAlg;
}
bool kind_is_vecspace(StructKind k) {
  return k == StructKind::VecSpace || k == StructKind::OrderedVecSpace;
}

StructKind kind_reduct(StructKind k) {
  switch (k) {
    case StructKind::LinOrder: return StructKind::Set;
    case StructKind::OrderedGraph: return StructKind::Graph;
    case StructKind::OrderedBoolAlg: return StructKind::BoolAlg;
    case StructKind::OrderedVecSpace: return StructKind::VecSpace;
    default: return k;
  }
}

StructKind kind_expansion(StructKind k) {
  switch (k) {
    case StructKind::Set: return StructKind::LinOrder;
    case StructKind::Graph: return StructKind::OrderedGraph;
    case StructKind::BoolAlg: return StructKind::OrderedBoolAlg;
    case StructKind::VecSpace: return StructKind::OrderedVecSpace;
    default: return k;
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

static void check_order_total(const FinStructure& s) {
  if (int(s.order.size()) != s.n)
    fail(err::InvalidDescriptor, "order array must rank every element");
  std::vector<bool> seen(s.n, false);
  for (int r : s.order) {
    if (r < 0 || r >= s.n || seen[r])
      fail(err::InvalidDescriptor, "order is not a total ranking (not a permutation of 0..n-1)");
    seen[r] = true;
  }
}

void validate_structure(const FinStructure& s) {
  if (s.n <= 0) fail(err::InvalidDescriptor, "structure must have at least one element");
  if (kind_is_graph(s.kind)) {
    if (s.n > 64) fail(err::InvalidDescriptor, "graph kinds support at most 64 vertices");
    if (int(s.adj.size()) != s.n) fail(err::InvalidDescriptor, "adjacency must be square");
    for (int u = 0; u < s.n; ++u) {
      if (s.adj[u] >> s.n) fail(err::InvalidDescriptor, "adjacency row exceeds vertex range");
      if ((s.adj[u] >> u) & 1) fail(err::InvalidDescriptor, "adjacency must be irreflexive");
      for (int v = 0; v < s.n; ++v)
        if (s.has_edge(u, v) != s.has_edge(v, u))
          fail(err::InvalidDescriptor, "adjacency must be symmetric");
    }
  }
  if (kind_is_boolalg(s.kind)) {
    if (s.atoms < 1 || s.atoms > 20) fail(err::InvalidDescriptor, "atom count out of range");
    if (s.n != (1 << s.atoms)) fail(err::InvalidDescriptor, "boolean algebra must have 2^atoms elements");
  }
  if (kind_is_vecspace(s.kind)) {
    if (!is_prime(s.p)) fail(err::InvalidDescriptor, "field order must be prime");
    // dim 0 (the zero space) arises as a generated substructure
    if (s.dim < 0 || s.dim > 20) fail(err::InvalidDescriptor, "dimension out of range");
    long n = 1;
    for (int i = 0; i < s.dim; ++i) n *= s.p;
    if (s.n != n) fail(err::InvalidDescriptor, "vector space must have p^dim elements");
  }
  if (kind_is_ordered(s.kind)) check_order_total(s);
}

FinStructure make_set(int n) {
  FinStructure s;
  s.kind = StructKind::Set;
  s.n = n;
  validate_structure(s);
  return s;
}

FinStructure make_linorder(int n) {
  FinStructure s;
  s.kind = StructKind::LinOrder;
  s.n = n;
  s.order.resize(n);
  for (int i = 0; i < n; ++i) s.order[i] = i;
  validate_structure(s);
  return s;
}

static std::vector<uint64_t> adj_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<uint64_t> adj(std::max(n, 0), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      fail(err::InvalidDescriptor, "edge endpoint out of range or loop");
    adj[u] |= uint64_t{1} << v;
    adj[v] |= uint64_t{1} << u;
  }
  return adj;
}

FinStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  FinStructure s;
  s.kind = StructKind::Graph;
  s.n = n;
  s.adj = adj_from_edges(n, edges);
  validate_structure(s);
  return s;
}

FinStructure make_ordered_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& order) {
  FinStructure s;
  s.kind = StructKind::OrderedGraph;
  s.n = n;
  s.adj = adj_from_edges(n, edges);
  s.order = order;
  validate_structure(s);
  return s;
}

FinStructure make_boolalg(int atoms) {
  FinStructure s;
  s.kind = StructKind::BoolAlg;
  s.atoms = atoms;
  s.n = atoms >= 1 && atoms <= 20 ? (1 << atoms) : 0;
  validate_structure(s);
  return s;
}

FinStructure make_ordered_boolalg(int atoms, const std::vector<int>& order) {
  FinStructure s = make_boolalg(atoms);
  s.kind = StructKind::OrderedBoolAlg;
  s.order = order;
  validate_structure(s);
  return s;
}

FinStructure make_vecspace(int dim, int p) {
  FinStructure s;
  s.kind = StructKind::VecSpace;
  s.dim = dim;
  s.p = p;
  if (!is_prime(p)) fail(err::InvalidDescriptor, "field order must be prime");
  if (dim < 0) fail(err::InvalidDescriptor, "dimension out of range");
  long n = 1;
  for (int i = 0; i < dim; ++i) {
    n *= p;
    if (n > 100000) fail(err::InvalidDescriptor, "vector space too large");
  }
  s.n = int(n);
  validate_structure(s);
  return s;
}

FinStructure make_ordered_vecspace(int dim, int p, const std::vector<int>& order) {
  FinStructure s = make_vecspace(dim, p);
  s.kind = StructKind::OrderedVecSpace;
  s.order = order;
  validate_structure(s);
  return s;
}

FinStructure with_order(const FinStructure& s, const std::vector<int>& order) {
  FinStructure t = s;
  t.kind = kind_expansion(s.kind);
  t.order = order;
  validate_structure(t);
  return t;
}

FinStructure reduct_of(const FinStructure& s) {
  FinStructure t = s;
  t.kind = kind_reduct(s.kind);
  if (t.kind == StructKind::Set || !kind_is_ordered(t.kind)) t.order.clear();
  validate_structure(t);
  return t;
}

std::vector<int> vs_digits(const FinStructure& s, int code) {
  std::vector<int> d(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    d[i] = code % s.p;
    code /= s.p;
  }
  return d;
}

int vs_pack(const FinStructure& s, const std::vector<int>& digits) {
  int code = 0;
  for (int i = s.dim - 1; i >= 0; --i) code = code * s.p + digits[i];
  return code;
}

int vs_add(const FinStructure& s, int x, int y) {
  auto a = vs_digits(s, x), b = vs_digits(s, y);
  for (int i = 0; i < s.dim; ++i) a[i] = (a[i] + b[i]) % s.p;
  return vs_pack(s, a);
}

int vs_scale(const FinStructure& s, int c, int x) {
  auto a = vs_digits(s, x);
  for (int i = 0; i < s.dim; ++i) a[i] = (a[i] * c) % s.p;
  return vs_pack(s, a);
}

bool same_labeled_structure(const FinStructure& a, const FinStructure& b) {
  return a.kind == b.kind && a.n == b.n && a.atoms == b.atoms && a.dim == b.dim &&
         a.p == b.p && a.adj == b.adj && a.order == b.order;
}

std::string structure_brief(const FinStructure& s) {
  std::ostringstream os;
  os << kind_name(s.kind) << "(n=" << s.n;
  if (kind_is_boolalg(s.kind)) os << ",m=" << s.atoms;
  if (kind_is_vecspace(s.kind)) os << ",d=" << s.dim << ",p=" << s.p;
  os << ")";
  return os.str();
}

}  // namespace umfw
