#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "umfw/errors.hpp"

namespace umfw {

// The five supported signatures plus their linear-order expansions.
enum class StructKind {
  Set,
  LinOrder,
  Graph,
  OrderedGraph,
  BoolAlg,
  OrderedBoolAlg,
  VecSpace,
  OrderedVecSpace,
};

const char* kind_name(StructKind k);
StructKind kind_from_name(const std::string& s);
bool kind_is_ordered(StructKind k);
bool kind_is_graph(StructKind k);
bool kind_is_boolalg(StructKind k);
bool kind_is_vecspace(StructKind k);
// Strip the order expansion: OrderedGraph -> Graph etc.
StructKind kind_reduct(StructKind k);
StructKind kind_expansion(StructKind k);

// A finite structure with a fixed element coding:
//   Set / LinOrder / Graph: elements 0..n-1,
//   BoolAlg: element = atom-subset bitmask, n = 2^atoms,
//   VecSpace: element = base-p digit vector packed as an integer, n = p^dim.
// Ordered kinds add `order`, a ranking array (order[e] = rank of element e).
struct FinStructure {
  StructKind kind = StructKind::Set;
  int n = 0;
  int atoms = 0;           // BoolAlg kinds
  int dim = 0, p = 0;      // VecSpace kinds
  std::vector<uint64_t> adj;  // adjacency rows, graph kinds (n <= 64)
  std::vector<int> order;     // ordered kinds

  bool has_edge(int u, int v) const { return (adj[u] >> v) & 1; }
  bool less(int a, int b) const { return order[a] < order[b]; }
};

// Validated constructors.  Every returned structure satisfies the kind's
// invariants; violations raise InvalidDescriptor naming the broken rule.
FinStructure make_set(int n);
FinStructure make_linorder(int n);
FinStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges);
FinStructure make_ordered_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& order);
FinStructure make_boolalg(int atoms);
FinStructure make_ordered_boolalg(int atoms, const std::vector<int>& order);
FinStructure make_vecspace(int dim, int p);
FinStructure make_ordered_vecspace(int dim, int p, const std::vector<int>& order);
// Reattach / detach an order expansion.
FinStructure with_order(const FinStructure& s, const std::vector<int>& order);
FinStructure reduct_of(const FinStructure& s);

void validate_structure(const FinStructure& s);

bool is_prime(int p);

// Boolean-algebra element operations (masks).
inline int ba_meet(int x, int y) { return x & y; }
inline int ba_join(int x, int y) { return x | y; }
inline int ba_compl(const FinStructure& s, int x) { return ((1 << s.atoms) - 1) & ~x; }

// Vector-space element operations on packed base-p codes.
std::vector<int> vs_digits(const FinStructure& s, int code);
int vs_pack(const FinStructure& s, const std::vector<int>& digits);
int vs_add(const FinStructure& s, int x, int y);
int vs_scale(const FinStructure& s, int c, int x);

// Equality of structures as labeled objects (not isomorphism).
bool same_labeled_structure(const FinStructure& a, const FinStructure& b);

std::string structure_brief(const FinStructure& s);

}  // namespace umfw
