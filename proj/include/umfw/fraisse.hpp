#pragma once

#include <optional>
#include <vector>

#include "umfw/classes.hpp"
#include "umfw/embed.hpp"

namespace umfw {

// Amalgam witness for embeddings i: A -> B and j: A -> C: structure D with
// k: B -> D, l: C -> D and k.i = l.j as element maps.
struct AmalgamWitness {
  FinStructure d;
  Embedding k;
  Embedding l;
};

struct HereditaryViolation {
  FinStructure member;
  std::vector<int> seed;
};

struct HereditaryReport {
  bool passed = true;
  std::optional<HereditaryViolation> violation;
  int members_checked = 0;
  int substructures_checked = 0;
};

// For every member B up to `bound` and every generated substructure of B,
// assert membership; reports the first counterexample in scan order.
HereditaryReport check_hereditary(const ClassDescriptor& k, int bound);

// Least class member (scan order) embedding both A and B, searching sizes up
// to `bound`; a disjoint-join construction is tried when the scan range is
// capped below the bound.
std::optional<FinStructure> check_jep(const ClassDescriptor& k, const FinStructure& a,
                                      const FinStructure& b, int bound);

// Amalgamate B and C over A along i, j: scan class members by size and search
// embedding pairs with the commuting constraint.  Absent only after the scan
// up to `bound` is exhausted.
std::optional<AmalgamWitness> check_amalgamation(const ClassDescriptor& k, const FinStructure& a,
                                                 const FinStructure& b, const FinStructure& c,
                                                 const Embedding& i, const Embedding& j,
                                                 int bound);

// Revalidate a witness independently of the search that produced it.
bool amalgam_witness_valid(const FinStructure& a, const FinStructure& b, const FinStructure& c,
                           const Embedding& i, const Embedding& j, const AmalgamWitness& w);

// Grid driver: run hereditary / joint-embedding / amalgamation over all class
// members (and embedding pairs, for AP) up to the bound.  Violations are
// reported as the lexicographically least counterexample.
struct GridReport {
  bool passed = true;
  std::string detail;  // empty when passed
  long instances = 0;
};
GridReport fraisse_grid(const ClassDescriptor& k, int bound);

}  // namespace umfw
