#include "umfw/classes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "umfw/canonical.hpp"

namespace umfw {

int class_size_of(const FinStructure& s) {
  if (kind_is_boolalg(s.kind)) return s.atoms;
  if (kind_is_vecspace(s.kind)) return s.dim;
  return s.n;
}

bool ClassDescriptor::contains(const FinStructure& s) const {
  if (s.kind != kind) return false;
  try {
    validate_structure(s);
  } catch (const Error&) {
    return false;
  }
  if (kind_is_vecspace(kind) && s.p != p) return false;
  if (tag == "natural") {
    if (kind == StructKind::OrderedBoolAlg) {
      if (!is_natural_ba_order(s, order_of(s))) return false;
    } else if (kind == StructKind::OrderedVecSpace) {
      if (!is_natural_vs_order(s, order_of(s))) return false;
    } else {
      return false;
    }
  }
  if (extra && !extra(s)) return false;
  return true;
}

ClassDescriptor class_by_name(const std::string& name) {
  ClassDescriptor d;
  d.name = name;
  if (name == "set") {
    d.kind = StructKind::Set;
    d.size_cap = 12;
  } else if (name == "linorder") {
    d.kind = StructKind::LinOrder;
    d.size_cap = 12;
  } else if (name == "graph") {
    d.kind = StructKind::Graph;
    d.size_cap = 6;
  } else if (name == "ordered_graph") {
    d.kind = StructKind::OrderedGraph;
    d.size_cap = 5;
  } else if (name == "boolalg") {
    d.kind = StructKind::BoolAlg;
    d.size_cap = 6;
  } else if (name == "natural_boolalg") {
    d.kind = StructKind::OrderedBoolAlg;
    d.tag = "natural";
    d.size_cap = 5;
  } else if (name == "vecspace_f2" || name == "vecspace_f3") {
    d.kind = StructKind::VecSpace;
    d.p = name.back() == '2' ? 2 : 3;
    d.size_cap = d.p == 2 ? 6 : 4;
  } else if (name == "natural_vecspace_f2" || name == "natural_vecspace_f3") {
    d.kind = StructKind::OrderedVecSpace;
    d.p = name.back() == '2' ? 2 : 3;
    d.tag = "natural";
    d.size_cap = 3;
  } else {
    fail(err::InvalidDescriptor, "unknown class name: " + name);
  }
  return d;
}

std::vector<std::string> shipped_class_names() {
  return {"set",        "linorder",    "graph",        "ordered_graph",
          "boolalg",    "natural_boolalg", "vecspace_f2",  "vecspace_f3",
          "natural_vecspace_f2", "natural_vecspace_f3"};
}

namespace {

std::vector<FinStructure> graphs_exact(int n) {
  int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> all_pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
  std::map<std::string, FinStructure> reps;
  for (long mask = 0; mask < (1L << pairs); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < pairs; ++i)
      if ((mask >> i) & 1) edges.push_back(all_pairs[i]);
    FinStructure g = make_graph(n, edges);
    std::string key = canonical_form(g).bytes;
    if (!reps.count(key)) reps.emplace(std::move(key), std::move(g));
  }
  std::vector<FinStructure> out;
  for (auto& [k, v] : reps) out.push_back(std::move(v));
  return out;
}

std::vector<FinStructure> ordered_graphs_exact(int n) {
  // An ordered graph is rigid, so each labeled graph on the chain
  // 0 < 1 < ... < n-1 is its own isomorphism class.
  int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> all_pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
  std::vector<int> identity_order(n);
  for (int i = 0; i < n; ++i) identity_order[i] = i;
  std::vector<FinStructure> out;
  for (long mask = 0; mask < (1L << pairs); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < pairs; ++i)
      if ((mask >> i) & 1) edges.push_back(all_pairs[i]);
    out.push_back(make_ordered_graph(n, edges, identity_order));
  }
  return out;
}

std::vector<FinStructure> ordered_coded_exact(const ClassDescriptor& k, int size) {
  // Ordered boolean algebras / vector spaces.  With the "natural" tag there
  // is exactly one class per size; otherwise enumerate all orders and dedupe
  // canonically (tiny sizes only).
  std::vector<FinStructure> out;
  FinStructure base = k.kind == StructKind::OrderedBoolAlg
                          ? make_boolalg(size)
                          : make_vecspace(size, k.p);
  if (k.tag == "natural") {
    std::vector<int> id(size);
    for (int i = 0; i < size; ++i) id[i] = i;
    LinearOrder ord;
    if (k.kind == StructKind::OrderedBoolAlg) {
      ord = natural_ba_order(size, id);
      out.push_back(make_ordered_boolalg(size, ord.rank));
    } else {
      std::vector<int> basis(size);
      for (int i = 0; i < size; ++i) {
        int code = 1;
        for (int t = 0; t < i; ++t) code *= k.p;
        basis[i] = code;
      }
      ord = natural_vs_order(base, basis);
      out.push_back(make_ordered_vecspace(size, k.p, ord.rank));
    }
    return out;
  }
  if (base.n > 5) fail(err::BoundTooLarge, "full ordered enumeration limited to 5 elements");
  std::vector<int> rank(base.n);
  for (int i = 0; i < base.n; ++i) rank[i] = i;
  std::map<std::string, FinStructure> reps;
  do {
    FinStructure s = with_order(base, rank);
    std::string key = canonical_form(s).bytes;
    if (!reps.count(key)) reps.emplace(std::move(key), std::move(s));
  } while (std::next_permutation(rank.begin(), rank.end()));
  for (auto& [key, v] : reps) out.push_back(std::move(v));
  return out;
}

}  // namespace

std::vector<FinStructure> enumerate_class_exact(const ClassDescriptor& k, int size) {
  if (size < 1) return {};
  if (size > k.size_cap)
    fail(err::BoundTooLarge, "class " + k.name + " capped at size " + std::to_string(k.size_cap));
  std::vector<FinStructure> out;
  switch (k.kind) {
    case StructKind::Set:
      out.push_back(make_set(size));
      break;
    case StructKind::LinOrder:
      out.push_back(make_linorder(size));
      break;
    case StructKind::Graph:
      out = graphs_exact(size);
      break;
    case StructKind::OrderedGraph:
      out = ordered_graphs_exact(size);
      break;
    case StructKind::BoolAlg:
      out.push_back(make_boolalg(size));
      break;
    case StructKind::VecSpace:
      out.push_back(make_vecspace(size, k.p));
      break;
    case StructKind::OrderedBoolAlg:
    case StructKind::OrderedVecSpace:
      out = ordered_coded_exact(k, size);
      break;
  }
  if (k.extra) {
    std::vector<FinStructure> kept;
    for (auto& s : out)
      if (k.extra(s)) kept.push_back(std::move(s));
    out = std::move(kept);
  }
  std::sort(out.begin(), out.end(), [](const FinStructure& a, const FinStructure& b) {
    return canonical_form(a).bytes < canonical_form(b).bytes;
  });
  return out;
}

std::vector<FinStructure> enumerate_class(const ClassDescriptor& k, int bound) {
  if (bound > k.size_cap)
    fail(err::BoundTooLarge, "class " + k.name + " capped at size " + std::to_string(k.size_cap));
  std::vector<FinStructure> out;
  for (int size = 1; size <= bound; ++size) {
    auto batch = enumerate_class_exact(k, size);
    out.insert(out.end(), std::make_move_iterator(batch.begin()),
               std::make_move_iterator(batch.end()));
  }
  return out;
}

}  // namespace umfw
