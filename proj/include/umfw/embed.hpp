#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "umfw/perm.hpp"
#include "umfw/structures.hpp"

namespace umfw {

// Structure-preserving injection dom -> cod.  map[i] is the codomain element
// carrying domain element i.
struct Embedding {
  std::shared_ptr<const FinStructure> dom;
  std::shared_ptr<const FinStructure> cod;
  std::vector<int> map;
};

// Distinct embedding images of `pattern` in `base`, as sorted element subsets
// closed to substructures (subalgebras / subspaces for the algebraic kinds).
// Copies are listed in lexicographic order of the sorted element lists.
struct CopySet {
  std::shared_ptr<const FinStructure> base;
  std::shared_ptr<const FinStructure> pattern;
  std::vector<std::vector<int>> copies;
};

// True when `map` satisfies the kind's embedding conditions (injective plus
// relation / operation preservation; induced for graphs, unital for boolean
// algebras, linear for vector spaces, monotone for ordered kinds).
bool is_valid_embedding(const FinStructure& a, const FinStructure& c,
                        const std::vector<int>& map);

// All embeddings of A into C, deterministic order (sorted by map array).
// `partial` constrains selected domain elements (-1 = free).
std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& c);
std::vector<Embedding> enumerate_embeddings_extending(const FinStructure& a,
                                                      const FinStructure& c,
                                                      const std::vector<int>& partial);
bool embedding_exists(const FinStructure& a, const FinStructure& c);

CopySet enumerate_copies(const FinStructure& a, const FinStructure& c);

// Witness isomorphism or nullopt; agrees with canonical_form equality.
std::optional<std::vector<int>> are_isomorphic(const FinStructure& s, const FinStructure& t);

// All self-isomorphisms, acting on the element universe.
PermGroup automorphism_group(const FinStructure& s);

// Smallest substructure containing `seed`, with its inclusion embedding.
// The returned structure uses the kind's canonical element coding.
struct GeneratedSub {
  FinStructure sub;
  Embedding inclusion;
};
GeneratedSub substructure_generated(const FinStructure& s, const std::vector<int>& seed);

// Universes of all substructures of S (subsets for relational kinds,
// subalgebras / subspaces for coded kinds), sorted; nonempty only.
std::vector<std::vector<int>> all_substructure_universes(const FinStructure& s);

// Structure induced on a closed universe, re-coded canonically, plus the
// element map new-code -> old element (the inclusion).
GeneratedSub induced_substructure(const FinStructure& s, const std::vector<int>& universe);

}  // namespace umfw
