#pragma once

#include <string>
#include <vector>

#include "umfw/structures.hpp"

namespace umfw {

struct CanonicalForm {
  // Byte encoding; equal encodings <=> isomorphic structures.
  std::string bytes;
  // relabel[i] = position of element i in the canonical representative.
  std::vector<int> relabel;
};

// Deterministic canonical form.  Graphs use ordered-partition refinement with
// backtracking over target cells; coded kinds (BoolAlg / VecSpace) are rigid
// up to their parameter, and ordered coded kinds minimize over the relevant
// structural symmetry group.
CanonicalForm canonical_form(const FinStructure& s);

std::string to_hex(const std::string& bytes);

// Relabel a relational structure along a permutation of its elements
// (element i of the result is pi^{-1}(i) of the input).  Only meaningful for
// Set / LinOrder / Graph / OrderedGraph, where element codings are free.
FinStructure relabel_structure(const FinStructure& s, const std::vector<int>& pi);

// All invertible matrices over F_p in dimension d, as element maps on packed
// codes; used for ordered vector-space canonicalization and rigidity checks.
const std::vector<std::vector<int>>& general_linear_maps(int dim, int p);

// Element map of B(atoms) induced by a permutation of atoms.
std::vector<int> ba_map_from_atom_perm(int atoms, const std::vector<int>& atom_perm);
// Element map of F_p^dim induced by an invertible basis-image list.
std::vector<int> vs_map_from_basis_images(const FinStructure& s, const std::vector<int>& images);

}  // namespace umfw
