#include "umfw/orders.hpp"

#include <algorithm>
#include <set>

#include "umfw/canonical.hpp"

namespace umfw {

OrderClassK OrderClassK::all_orders(StructKind base) {
  OrderClassK k;
  k.base_kind = kind_reduct(base);
  k.pred = "all";
  return k;
}

OrderClassK OrderClassK::natural(StructKind base) {
  StructKind b = kind_reduct(base);
  if (b != StructKind::BoolAlg && b != StructKind::VecSpace)
    fail(err::InvalidDescriptor, "natural orders exist for boolean algebras and vector spaces");
  OrderClassK k;
  k.base_kind = b;
  k.pred = "natural";
  return k;
}

bool OrderClassK::member(const FinStructure& ordered) const {
  if (!kind_is_ordered(ordered.kind) || kind_reduct(ordered.kind) != base_kind) return false;
  if (pred == "all") return true;
  if (base_kind == StructKind::BoolAlg) return is_natural_ba_order(ordered, order_of(ordered));
  return is_natural_vs_order(ordered, order_of(ordered));
}

std::vector<LinearOrder> all_linear_orders(int n, int cap) {
  if (n > cap) fail(err::BoundTooLarge, "too many linear orders to enumerate");
  std::vector<LinearOrder> out;
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = i;
  do {
    out.push_back(LinearOrder{rank});
  } while (std::next_permutation(rank.begin(), rank.end()));
  return out;
}

std::vector<FinStructure> natural_orders_boolean(const FinStructure& ba) {
  if (!kind_is_boolalg(ba.kind)) fail(err::KindMismatch, "expected a boolean algebra");
  std::vector<FinStructure> out;
  std::vector<int> atom_rank(ba.atoms);
  for (int i = 0; i < ba.atoms; ++i) atom_rank[i] = i;
  do {
    out.push_back(make_ordered_boolalg(ba.atoms, natural_ba_order(ba.atoms, atom_rank).rank));
  } while (std::next_permutation(atom_rank.begin(), atom_rank.end()));
  return out;
}

FinStructure natural_order_vs(const FinStructure& vs, const std::vector<int>& ordered_basis) {
  if (!kind_is_vecspace(vs.kind)) fail(err::KindMismatch, "expected a vector space");
  LinearOrder ord = natural_vs_order(vs, ordered_basis);
  return make_ordered_vecspace(vs.dim, vs.p, ord.rank);
}

std::vector<LinearOrder> natural_vs_orders_all(const FinStructure& vs) {
  // Orders are deduplicated as orders, not as bases.
  std::set<LinearOrder> orders;
  const auto& gl = general_linear_maps(vs.dim, vs.p);
  for (const auto& m : gl) {
    std::vector<int> basis(vs.dim);
    for (int i = 0; i < vs.dim; ++i) {
      int e = 1;
      for (int t = 0; t < i; ++t) e *= vs.p;
      basis[i] = m[e];
    }
    orders.insert(natural_vs_order(vs, basis));
  }
  return {orders.begin(), orders.end()};
}

bool is_normal_ordering(const FinStructure& s, const LinearOrder& ord, const OrderClassK& k) {
  if (int(ord.rank.size()) != s.n)
    fail(err::ShapeMismatch, "order must rank the structure's universe");
  if (k.pred == "all") return true;  // every restriction is a linear order
  FinStructure expanded = with_order(reduct_of(s), ord.rank);
  for (const auto& universe : all_substructure_universes(expanded)) {
    GeneratedSub gs = induced_substructure(expanded, universe);
    if (!k.member(gs.sub)) return false;
  }
  return true;
}

std::vector<LinearOrder> no_space_by_filter(const FinStructure& s, const OrderClassK& k) {
  std::vector<LinearOrder> out;
  for (const auto& ord : all_linear_orders(s.n))
    if (is_normal_ordering(s, ord, k)) out.push_back(ord);
  return out;
}

std::vector<LinearOrder> no_space(const FinStructure& s, const OrderClassK& k) {
  if (k.pred == "all") return all_linear_orders(s.n);
  // A structure is a substructure of itself, so a normal ordering is in
  // particular a natural order of the whole structure; conversely natural
  // orders restrict naturally (grid-verified against no_space_by_filter).
  std::vector<LinearOrder> candidates;
  if (k.base_kind == StructKind::BoolAlg) {
    for (const auto& ob : natural_orders_boolean(reduct_of(s))) candidates.push_back(order_of(ob));
  } else {
    candidates = natural_vs_orders_all(reduct_of(s));
  }
  std::vector<LinearOrder> out;
  for (const auto& ord : candidates)
    if (is_normal_ordering(s, ord, k)) out.push_back(ord);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinearOrder> k_orders_on(const FinStructure& base, const OrderClassK& k) {
  std::vector<LinearOrder> out;
  if (k.pred == "all") return all_linear_orders(base.n);
  if (k.base_kind == StructKind::BoolAlg) {
    for (const auto& ob : natural_orders_boolean(base)) out.push_back(order_of(ob));
    std::sort(out.begin(), out.end());
    return out;
  }
  return natural_vs_orders_all(base);
}

std::vector<FinStructure> ordered_members_exact(const OrderClassK& k, int size, int p) {
  std::vector<FinStructure> out;
  switch (k.base_kind) {
    case StructKind::Set: {
      FinStructure base = make_set(size);
      for (const auto& ord : all_linear_orders(size)) out.push_back(with_order(base, ord.rank));
      break;
    }
    case StructKind::Graph: {
      ClassDescriptor g = class_by_name("graph");
      for (const auto& base : enumerate_class_exact(g, size))
        for (const auto& ord : all_linear_orders(size)) {
          FinStructure og = with_order(base, ord.rank);
          out.push_back(og);
        }
      break;
    }
    case StructKind::BoolAlg: {
      FinStructure base = make_boolalg(size);
      if (k.pred == "natural") {
        out = natural_orders_boolean(base);
      } else {
        for (const auto& ord : all_linear_orders(base.n)) out.push_back(with_order(base, ord.rank));
      }
      break;
    }
    case StructKind::VecSpace: {
      FinStructure base = make_vecspace(size, p);
      if (k.pred == "natural") {
        for (const auto& ord : natural_vs_orders_all(base)) out.push_back(with_order(base, ord.rank));
      } else {
        for (const auto& ord : all_linear_orders(base.n)) out.push_back(with_order(base, ord.rank));
      }
      break;
    }
    default:
      fail(err::InvalidDescriptor, "unsupported base kind");
  }
  return out;
}

ForgetfulnessReport check_order_forgetful(const OrderClassK& k, int bound) {
  ForgetfulnessReport rep;
  for (int size = 1; size <= bound && rep.forgetful; ++size) {
    auto members = ordered_members_exact(k, size);
    // Group by reduct isomorphism class, then require ordered isomorphism.
    for (size_t i = 0; i < members.size() && rep.forgetful; ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        const auto& a = members[i];
        const auto& b = members[j];
        if (canonical_form(reduct_of(a)).bytes != canonical_form(reduct_of(b)).bytes) continue;
        ++rep.pairs_checked;
        if (canonical_form(a).bytes != canonical_form(b).bytes) {
          rep.forgetful = false;
          rep.counterexample = {a, b};
          break;
        }
      }
  }
  return rep;
}

std::optional<FinStructure> check_ordering_property(const OrderClassK& k, const FinStructure& a,
                                                    int bound) {
  if (kind_reduct(a.kind) != k.base_kind) fail(err::KindMismatch, "A must lie in the reduct class");
  FinStructure base_a = kind_is_ordered(a.kind) ? reduct_of(a) : a;
  auto a_orders = k_orders_on(base_a, k);

  std::string reduct_name;
  switch (k.base_kind) {
    case StructKind::Set: reduct_name = "set"; break;
    case StructKind::Graph: reduct_name = "graph"; break;
    case StructKind::BoolAlg: reduct_name = "boolalg"; break;
    case StructKind::VecSpace: reduct_name = base_a.p == 2 ? "vecspace_f2" : "vecspace_f3"; break;
    default: fail(err::InvalidDescriptor, "unsupported base kind");
  }
  ClassDescriptor reduct_class = class_by_name(reduct_name);
  if (bound > reduct_class.size_cap) fail(err::BoundTooLarge, "bound exceeds class cap");

  for (const auto& b : enumerate_class(reduct_class, bound)) {
    auto b_orders = k_orders_on(b, k);
    if (b_orders.empty()) continue;
    bool all_embed = true;
    for (const auto& oa : a_orders) {
      FinStructure ordered_a = with_order(base_a, oa.rank);
      for (const auto& ob : b_orders) {
        FinStructure ordered_b = with_order(b, ob.rank);
        if (!embedding_exists(ordered_a, ordered_b)) {
          all_embed = false;
          break;
        }
      }
      if (!all_embed) break;
    }
    if (all_embed) return b;
  }
  return std::nullopt;
}

}  // namespace umfw
