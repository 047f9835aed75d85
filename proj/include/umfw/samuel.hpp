#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umfw/bits.hpp"
#include "umfw/dynamics.hpp"
#include "umfw/perm.hpp"

namespace umfw {

// A family of subgroups of G standing in for a neighbourhood basis of the
// identity: contains G, downward directed (unique least member) and closed
// under conjugation.  Members are element-index subsets of G's element list.
struct SubgroupFamily {
  PermGroup group;
  std::vector<Bitset> members;
  int least = -1;  // index of the least member (= the intersection)

  Bitset intersection() const { return members[least]; }
};

SubgroupFamily make_family(const PermGroup& g, std::vector<Bitset> members);

// Is the subset a subgroup (identity, closure, inverses)?
bool is_subgroup_subset(const PermGroup& g, const Bitset& s);
// Every subgroup of g, deterministically ordered.
std::vector<Bitset> all_subgroups(const PermGroup& g);
// Every valid subgroup family over g (subsets of the subgroup lattice that
// contain G, are conjugation closed and have a least member).
std::vector<SubgroupFamily> all_valid_families(const PermGroup& g, size_t cap = 100000);

// A Boolean algebra of subsets of the group carrier, given by its atoms
// (which partition the carrier) and all their unions.
struct SetFamilyAlgebra {
  int carrier = 0;
  std::vector<Bitset> atoms;
  std::vector<Bitset> sets;  // all unions of atoms, sorted
  // witness per atom: (family member index, carrier element) with atom = V g
  std::vector<std::pair<int, int>> atom_tags;

  bool contains_set(const Bitset& s) const;
  int atom_of(int carrier_element) const;
};

// L = { B : VB = B for some member V } = the algebra of right-coset unions
// of the least member.  Boolean closure and the coset description are
// asserted during construction.
SetFamilyAlgebra build_L(const PermGroup& g, const SubgroupFamily& n);

// Stone space of L: points are atoms, G acts by set image.  The action is
// verified to satisfy the ultrafilter-image definition g.x = { gA : A in x }.
struct StoneSpace {
  SetFamilyAlgebra algebra;
  GroupAction action;  // group indices act on atom indices
};
StoneSpace stone_space(const SetFamilyAlgebra& l, const PermGroup& g);

// Ultrafilter product on atoms: the unique atom w such that a generator
// belongs to uv iff { g : g^{-1}[B] contains the v-atom } contains the
// u-atom.  Verified against the quotient-group multiplication.
int semigroup_mul(int u, int v, const SetFamilyAlgebra& l, const PermGroup& g);

struct AtomSemigroup {
  std::vector<std::vector<int>> mul;
  bool associative = true;
};
AtomSemigroup semigroup_table(const SetFamilyAlgebra& l, const PermGroup& g);

// All minimal left ideals of the finite semigroup; each is verified to be a
// minimal subflow and all are pairwise isomorphic as G-flows.
struct IdealsReport {
  std::vector<std::vector<int>> ideals;
  bool each_minimal_subflow = true;
  bool pairwise_isomorphic = true;
};
IdealsReport minimal_left_ideals(const AtomSemigroup& sg, const StoneSpace& space);

// Translation invariance plus nonemptiness of members (every nonempty subset
// of a finite group is syndetic; the structural content is invariance).
bool is_syndetic_subalgebra(const SetFamilyAlgebra& b, const PermGroup& g);

// A maximal syndetic subalgebra of L (L itself whenever L qualifies, which
// the conjugation closure of the family guarantees); found by lattice search
// otherwise and verified unique up to isomorphism.
SetFamilyAlgebra maximal_syndetic_subalgebra(const SetFamilyAlgebra& l, const PermGroup& g);

struct RetCorrespondenceReport {
  bool holds = false;
  int ideal_size = 0;
  int base_point = 0;  // least atom of the minimal ideal
};
// { ret(m, O) : O clopen in the minimal ideal } equals the maximal syndetic
// subalgebra, extensionally.
RetCorrespondenceReport ret_algebra_correspondence(const SetFamilyAlgebra& l, const PermGroup& g);

struct EmbedSymReport {
  int degree = 0;  // number of distinct left translates
  std::vector<Perm> images;  // pi_g per group element index
  bool homomorphism = true;
  bool injective = false;
  int kernel_size = 1;
  bool kernel_is_intersection = true;
  bool stabilizer_property = true;
  bool separating_family = false;  // least member trivial
};
// pi_g permutes the left translates of family members by left multiplication;
// the kernel is the family intersection, so pi is injective exactly when the
// family separates (least member trivial).
EmbedSymReport embed_into_sym(const PermGroup& g, const SubgroupFamily& n);

// One-stop verification used by the catalog sweep.
struct SamuelInstanceReport {
  int group_order = 0;
  int family_size = 0;
  int l_atoms = 0;
  bool l_boolean_closed = false;
  bool l_left_invariant = false;
  bool stone_action_ok = false;
  bool mul_matches_quotient = false;
  bool mul_associative = false;
  bool right_translations_ok = false;
  int num_minimal_ideals = 0;
  bool ideals_ok = false;
  bool maxsynd_is_l = false;
  bool theorem_flow_iso = false;  // Stone(max syndetic) iso to the minimal ideal as G-flows
  bool ret_correspondence = false;
  EmbedSymReport embed;

  bool all_ok() const;
};
SamuelInstanceReport samuel_check_instance(const PermGroup& g, const SubgroupFamily& n);

}  // namespace umfw
