#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "umfw/bits.hpp"
#include "umfw/embed.hpp"
#include "umfw/orders.hpp"
#include "umfw/perm.hpp"

namespace umfw {

// A finite group action: the acting group with enumerated elements and a
// total action table tab[g][x].  The action laws (identity, compatibility)
// are asserted at construction.
class GroupAction {
 public:
  GroupAction() = default;
  // act(element index, point) -> point
  static GroupAction build(const PermGroup& group, int n_points,
                           const std::function<int(const Perm&, int)>& act);

  const PermGroup& group() const { return group_; }
  int points() const { return n_points_; }
  int apply(int g_index, int x) const { return tab_[g_index][x]; }

 private:
  PermGroup group_;
  int n_points_ = 0;
  std::vector<std::vector<int>> tab_;
};

// The order g< with a (g<) b iff g^{-1}a < g^{-1}b.
LinearOrder act_on_order(const Perm& g, const LinearOrder& ord);

// Action of a permutation group on a given list of orders (closed under the
// action), e.g. LO(n) or a space of normal orderings.
GroupAction order_flow(const PermGroup& g, const std::vector<LinearOrder>& orders);

// ret(x, O) = { g : g.x in O }, as a bitset over the group's element list.
Bitset return_set(const GroupAction& action, int x, const Bitset& o);

// Exact minimal number of left translates of S covering the group
// (branch-and-bound set cover); nullopt iff S is empty.
std::optional<int> syndetic_bound(const PermGroup& g, const Bitset& s);

struct MinimalityReport {
  bool minimal = false;
  bool orbit_criterion = false;     // every orbit is the whole space
  bool covering_criterion = false;  // union of translates of any nonempty open set covers
  bool syndetic_criterion = false;  // every return set is syndetic
  int subsets_checked = 0;
};

// Computes the three minimality criteria independently and asserts they
// agree (CriteriaDisagree signals a bug).  Open sets are scanned in full when
// 2^points is small, otherwise over singletons; unions of singleton images
// decide the general case.
MinimalityReport is_minimal(const GroupAction& action);

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& a);
PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<int>& a);

// Deterministic transversal of the right cosets H\K (least element per
// coset); NotASubgroup when H is not a subgroup of K.
std::vector<Perm> coset_representatives(const PermGroup& h, const PermGroup& k);
// Left-coset variant (sigma H), used by the coloring trace.
std::vector<Perm> left_coset_representatives(const PermGroup& h, const PermGroup& k);

// Finite analog of the minimal-flow theorem for a normal-ordering space:
// (a) the action of G on NO_K(S) is minimal, and (b) for every normal order,
// substructure A and K-order on A, the return set into the corresponding
// order window has exact syndetic bound at most [G_(A) : G_A].
struct FlowBoundRow {
  std::vector<int> universe;      // substructure elements
  std::vector<int> window_chain;  // K-order on it, as an element chain
  int ret_size = 0;
  int bound = 0;        // exact syndetic bound (0 when the window is empty)
  int coset_index = 0;  // [G_(A) : G_A]
  bool within = true;
};

struct FlowReport {
  bool density_surrogate = false;  // G transitive on copies of every substructure type
  MinimalityReport minimality;
  bool bounds_hold = true;
  std::vector<FlowBoundRow> violations;
  long rows_checked = 0;
  int no_points = 0;
};

FlowReport minimal_flow_check_NO(const FinStructure& s, const OrderClassK& k, const PermGroup& g);

// Finite shadow of the syndetic-algebra maximality argument: build the
// two-coloring of A-copies induced by H, cover claims for H' = S^A H and its
// complement, then search the window generated by the claimed translates for
// a monochromatic copy and report the contradiction element.
struct ColoringTraceResult {
  bool complement_empty = false;
  bool h_cover_ok = false;
  bool complement_cover_ok = false;
  std::vector<int> coloring;  // over copies of A in S (0 = H'-side)
  std::vector<int> window;    // universe generated by the translate images
  bool mono_found = false;
  std::vector<int> mono_copy;
  int mono_color = -1;
  std::optional<Perm> contradiction_f;
  std::string note;
};

ColoringTraceResult proof_coloring_trace(const PermGroup& g, const FinStructure& s,
                                         const std::vector<int>& a_universe, const Bitset& h,
                                         const std::vector<int>& h_cover_translates,
                                         const std::vector<int>& complement_cover_translates);

}  // namespace umfw
