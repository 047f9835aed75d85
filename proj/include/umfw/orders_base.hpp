#pragma once

#include <optional>
#include <vector>

#include "umfw/structures.hpp"

namespace umfw {

// A point of the space of linear orders on n elements: rank[e] is the
// position of element e in the chain.
struct LinearOrder {
  std::vector<int> rank;

  int size() const { return int(rank.size()); }
  bool less(int a, int b) const { return rank[a] < rank[b]; }
  bool operator==(const LinearOrder& o) const { return rank == o.rank; }
  bool operator<(const LinearOrder& o) const { return rank < o.rank; }
};

// Chain listing: element ids sorted by rank.
std::vector<int> chain_of(const LinearOrder& ord);
LinearOrder order_from_chain(const std::vector<int>& chain);

// Antilexicographic order on B(m) induced by an atom ranking: x < y iff the
// top atom (under the ranking) of the symmetric difference lies in y.
LinearOrder natural_ba_order(int atoms, const std::vector<int>& atom_rank);

// Antilexicographic order on F_p^d induced by an ordered basis and the field
// order 0 < 1 < ... < p-1: compare at the highest basis index where the
// coordinates differ.  NotABasis when the given vectors are dependent.
LinearOrder natural_vs_order(const FinStructure& space, const std::vector<int>& ordered_basis);

// Recognition: is this order of the structure natural?  Reads the candidate
// generator ordering off the chain (atoms sit at positions 2^i, basis vectors
// at positions p^i) and compares against the induced antilexicographic order.
bool is_natural_ba_order(const FinStructure& ba, const LinearOrder& ord);
bool is_natural_vs_order(const FinStructure& vs, const LinearOrder& ord);

// Order of an ordered structure, as a LinearOrder point.
LinearOrder order_of(const FinStructure& s);

}  // namespace umfw
