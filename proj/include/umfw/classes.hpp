#pragma once

#include <functional>
#include <string>
#include <vector>

#include "umfw/embed.hpp"
#include "umfw/orders_base.hpp"
#include "umfw/structures.hpp"

namespace umfw {

// A bounded class of finite structures given by a kind, an optional
// membership predicate tag and a size cap.  "size" means elements for the
// relational kinds, atoms for boolean algebras and dimension for vector
// spaces.
struct ClassDescriptor {
  std::string name;
  StructKind kind = StructKind::Set;
  int size_cap = 6;
  int p = 0;  // field order for vector-space kinds
  std::string tag;  // "" or "natural"
  // Test hook: extra predicate restricting membership.
  std::function<bool(const FinStructure&)> extra;

  bool contains(const FinStructure& s) const;
};

// Shipped class descriptors: set, linorder, graph, ordered_graph, boolalg,
// natural_boolalg, vecspace_f2, vecspace_f3, natural_vecspace_f2,
// natural_vecspace_f3.
ClassDescriptor class_by_name(const std::string& name);
std::vector<std::string> shipped_class_names();

// One representative per isomorphism class of size exactly `size`.
std::vector<FinStructure> enumerate_class_exact(const ClassDescriptor& k, int size);

// One representative per isomorphism class of size at most `bound`, sorted by
// canonical encoding (which orders by size first).
std::vector<FinStructure> enumerate_class(const ClassDescriptor& k, int bound);

// Size parameter of a member (elements / atoms / dimension).
int class_size_of(const FinStructure& s);

}  // namespace umfw
