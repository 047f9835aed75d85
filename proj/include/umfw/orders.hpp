#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umfw/classes.hpp"
#include "umfw/embed.hpp"
#include "umfw/orders_base.hpp"

namespace umfw {

// An order-expansion class over a base kind: either every linear order, or
// the natural (antilexicographic) orders on the coded kinds.  Forgetting the
// order of any member lands in the base class by construction.
struct OrderClassK {
  StructKind base_kind = StructKind::Set;
  std::string pred = "all";  // "all" | "natural"

  static OrderClassK all_orders(StructKind base);
  static OrderClassK natural(StructKind base);

  // Membership of an ordered structure (kind = expansion of base_kind).
  bool member(const FinStructure& ordered) const;
};

// All n! linear orders on n points, deterministic order.  BoundTooLarge
// beyond the cap (default 8).
std::vector<LinearOrder> all_linear_orders(int n, int cap = 8);

// The m! natural expansions of a boolean algebra, one per atom ranking.
std::vector<FinStructure> natural_orders_boolean(const FinStructure& ba);

// Natural expansion of a vector space from an ordered basis.
FinStructure natural_order_vs(const FinStructure& vs, const std::vector<int>& ordered_basis);

// Distinct natural orders on a vector space (deduplicated over ordered bases).
std::vector<LinearOrder> natural_vs_orders_all(const FinStructure& vs);

// True iff every generated substructure of S carries an order (the
// restriction of `ord`) lying in K.
bool is_normal_ordering(const FinStructure& s, const LinearOrder& ord, const OrderClassK& k);

// The space of normal orderings of S induced by K.  For "all" this is every
// linear order; for "natural" classes it equals the natural expansions (a
// fact cross-checked against the filter definition in the tests).
std::vector<LinearOrder> no_space(const FinStructure& s, const OrderClassK& k);
// Literal filter definition; BoundTooLarge when |S|! exceeds the cap.
std::vector<LinearOrder> no_space_by_filter(const FinStructure& s, const OrderClassK& k);

// All K-orders on a base structure, sorted.
std::vector<LinearOrder> k_orders_on(const FinStructure& base, const OrderClassK& k);

// Order-forgetfulness report: do isomorphic reducts force ordered isomorphism?
struct ForgetfulnessReport {
  bool forgetful = true;
  // least counterexample pair, when not forgetful
  std::optional<std::pair<FinStructure, FinStructure>> counterexample;
  int pairs_checked = 0;
};
ForgetfulnessReport check_order_forgetful(const OrderClassK& k, int bound);

// Least B (class-enumeration order, size <= bound) such that every K-order
// on A embeds order-preservingly into every K-order on B.
std::optional<FinStructure> check_ordering_property(const OrderClassK& k, const FinStructure& a,
                                                    int bound);

// All ordered members of K of exact base size (explicit, no isomorphism
// deduplication); used by the forgetfulness scan.
std::vector<FinStructure> ordered_members_exact(const OrderClassK& k, int size, int p = 2);

}  // namespace umfw
