#include "umfw/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "umfw/canonical.hpp"
#include "umfw/ramsey.hpp"

namespace umfw {

GroupAction GroupAction::build(const PermGroup& group, int n_points,
                               const std::function<int(const Perm&, int)>& act) {
  GroupAction ga;
  ga.group_ = group;
  ga.n_points_ = n_points;
  const auto& elems = group.elements();
  ga.tab_.assign(elems.size(), std::vector<int>(n_points));
  for (size_t gi = 0; gi < elems.size(); ++gi)
    for (int x = 0; x < n_points; ++x) {
      int y = act(elems[gi], x);
      if (y < 0 || y >= n_points) fail(err::InvalidDescriptor, "action leaves the point set");
      ga.tab_[gi][x] = y;
    }
  // Action laws, asserted at construction.
  int id = group.index_of(perm_identity(group.degree()));
  for (int x = 0; x < n_points; ++x)
    if (ga.tab_[id][x] != x) fail(err::InvalidDescriptor, "identity must act trivially");
  for (size_t gi = 0; gi < elems.size(); ++gi)
    for (size_t hi = 0; hi < elems.size(); ++hi) {
      int ghi = group.index_of(perm_compose(elems[gi], elems[hi]));
      for (int x = 0; x < n_points; ++x)
        if (ga.tab_[ghi][x] != ga.tab_[gi][ga.tab_[hi][x]])
          fail(err::InvalidDescriptor, "action is not compatible with composition");
    }
  return ga;
}

LinearOrder act_on_order(const Perm& g, const LinearOrder& ord) {
  if (g.size() != ord.rank.size()) fail(err::DegreeMismatch, "degree does not match the order");
  Perm gi = perm_inverse(g);
  LinearOrder out;
  out.rank.resize(ord.rank.size());
  for (size_t x = 0; x < ord.rank.size(); ++x) out.rank[x] = ord.rank[gi[x]];
  return out;
}

GroupAction order_flow(const PermGroup& g, const std::vector<LinearOrder>& orders) {
  std::map<LinearOrder, int> index;
  for (size_t i = 0; i < orders.size(); ++i) index[orders[i]] = int(i);
  return GroupAction::build(g, int(orders.size()), [&](const Perm& p, int x) {
    auto it = index.find(act_on_order(p, orders[x]));
    if (it == index.end()) fail(err::InvalidDescriptor, "order list is not closed under the action");
    return it->second;
  });
}

Bitset return_set(const GroupAction& action, int x, const Bitset& o) {
  Bitset ret(int(action.group().order()));
  for (int gi = 0; gi < int(action.group().order()); ++gi)
    if (o.test(action.apply(gi, x))) ret.set(gi);
  return ret;
}

std::optional<int> syndetic_bound(const PermGroup& g, const Bitset& s) {
  if (s.none()) return std::nullopt;
  const auto& mul = g.mul_table();
  const int n = int(g.order());
  // Distinct left translates hS = { h s : s in S }.
  auto members = s.members();
  std::set<Bitset> translate_set;
  for (int hi = 0; hi < n; ++hi) {
    Bitset t(n);
    for (int si : members) t.set(mul[hi][si]);
    translate_set.insert(t);
  }
  std::vector<Bitset> translates(translate_set.begin(), translate_set.end());

  // Greedy upper bound.
  int best;
  {
    Bitset covered(n);
    int used = 0;
    while (covered.count() < n) {
      int pick = -1, gain = -1;
      for (size_t t = 0; t < translates.size(); ++t) {
        int add = (translates[t] & ~covered).count();
        if (add > gain) {
          gain = add;
          pick = int(t);
        }
      }
      covered |= translates[pick];
      ++used;
    }
    best = used;
  }

  // Exact branch and bound on the least uncovered element.
  int size = s.count();
  std::function<void(Bitset, int)> rec = [&](Bitset covered, int used) {
    int missing = n - covered.count();
    if (missing == 0) {
      best = std::min(best, used);
      return;
    }
    int lower = used + (missing + size - 1) / size;
    if (lower >= best) return;
    int e = (~covered).first_set();
    for (const auto& t : translates)
      if (t.test(e)) rec(covered | t, used + 1);
  };
  rec(Bitset(n), 0);
  return best;
}

MinimalityReport is_minimal(const GroupAction& action) {
  MinimalityReport rep;
  const int np = action.points();
  const int ng = int(action.group().order());

  // (i) no proper nonempty closed invariant subset: every orbit is X.
  {
    rep.orbit_criterion = true;
    for (int x = 0; x < np; ++x) {
      std::vector<char> seen(np, 0);
      int cnt = 0;
      for (int gi = 0; gi < ng; ++gi) {
        int y = action.apply(gi, x);
        if (!seen[y]) {
          seen[y] = 1;
          ++cnt;
        }
      }
      if (cnt != np) {
        rep.orbit_criterion = false;
        break;
      }
    }
  }

  // Open sets to quantify over in (ii) and (iii).
  std::vector<Bitset> opens;
  if (np <= 12) {
    for (int mask = 1; mask < (1 << np); ++mask) {
      Bitset o(np);
      for (int x = 0; x < np; ++x)
        if ((mask >> x) & 1) o.set(x);
      opens.push_back(o);
    }
  } else {
    // gO = union over singletons of O; singleton checks decide every O.
    for (int x = 0; x < np; ++x) {
      Bitset o(np);
      o.set(x);
      opens.push_back(o);
    }
  }
  rep.subsets_checked = int(opens.size());

  // (ii) the translates of every nonempty open set cover X.
  {
    rep.covering_criterion = true;
    for (const auto& o : opens) {
      Bitset u(np);
      for (int gi = 0; gi < ng; ++gi)
        for (int x = 0; x < np; ++x)
          if (o.test(x)) u.set(action.apply(gi, x));
      if (u.count() != np) {
        rep.covering_criterion = false;
        break;
      }
    }
  }

  // (iii) every return set is syndetic: some finite family of left
  // translates covers the group.  Witnessed extensionally with the full
  // translate family (the stronger exact bound is a separate operation).
  {
    rep.syndetic_criterion = true;
    const auto& mul = action.group().mul_table();
    for (int x = 0; x < np && rep.syndetic_criterion; ++x)
      for (const auto& o : opens) {
        Bitset ret = return_set(action, x, o);
        auto members = ret.members();
        Bitset covered(ng);
        for (int hi = 0; hi < ng; ++hi)
          for (int si : members) covered.set(mul[hi][si]);
        if (covered.count() != ng) {
          rep.syndetic_criterion = false;
          break;
        }
      }
  }

  if (rep.orbit_criterion != rep.covering_criterion ||
      rep.orbit_criterion != rep.syndetic_criterion)
    fail(err::CriteriaDisagree, "minimality criteria disagree");
  rep.minimal = rep.orbit_criterion;
  return rep;
}

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& a) {
  for (int x : a)
    if (x < 0 || x >= g.degree()) fail(err::InvalidDescriptor, "point out of range");
  std::vector<Perm> elems;
  for (const Perm& p : g.elements()) {
    bool fixes = true;
    for (int x : a)
      if (p[x] != x) {
        fixes = false;
        break;
      }
    if (fixes) elems.push_back(p);
  }
  return PermGroup::from_elements(g.degree(), std::move(elems));
}

PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<int>& a) {
  for (int x : a)
    if (x < 0 || x >= g.degree()) fail(err::InvalidDescriptor, "point out of range");
  std::vector<char> in(g.degree(), 0);
  for (int x : a) in[x] = 1;
  std::vector<Perm> elems;
  for (const Perm& p : g.elements()) {
    bool keeps = true;
    for (int x : a)
      if (!in[p[x]]) {
        keeps = false;
        break;
      }
    if (keeps) elems.push_back(p);
  }
  return PermGroup::from_elements(g.degree(), std::move(elems));
}

std::vector<Perm> coset_representatives(const PermGroup& h, const PermGroup& k) {
  if (!h.is_subgroup_of(k)) fail(err::NotASubgroup, "H must be a subgroup of K");
  std::vector<Perm> reps;
  std::set<Perm> assigned;
  for (const Perm& x : k.elements()) {  // lex order: first hit per coset is least
    if (assigned.count(x)) continue;
    reps.push_back(x);
    for (const Perm& hh : h.elements()) assigned.insert(perm_compose(hh, x));  // Hx
  }
  return reps;
}

std::vector<Perm> left_coset_representatives(const PermGroup& h, const PermGroup& k) {
  if (!h.is_subgroup_of(k)) fail(err::NotASubgroup, "H must be a subgroup of K");
  std::vector<Perm> reps;
  std::set<Perm> assigned;
  for (const Perm& x : k.elements()) {
    if (assigned.count(x)) continue;
    reps.push_back(x);
    for (const Perm& hh : h.elements()) assigned.insert(perm_compose(x, hh));  // xH
  }
  return reps;
}

namespace {

// Copies of every substructure isomorphism type, with the group orbit check:
// the finite surrogate of density is transitivity on copies of each type.
bool density_surrogate_holds(const FinStructure& s, const PermGroup& g) {
  auto universes = all_substructure_universes(s);
  // Group universes by isomorphism type of the induced structure.
  std::map<std::string, std::vector<std::vector<int>>> by_type;
  for (const auto& u : universes) {
    GeneratedSub gs = induced_substructure(s, u);
    by_type[canonical_form(gs.sub).bytes].push_back(u);
  }
  for (const auto& [type, list] : by_type) {
    std::set<std::vector<int>> all(list.begin(), list.end());
    // orbit of the first universe
    std::set<std::vector<int>> orbit;
    for (const Perm& p : g.elements()) {
      std::vector<int> img;
      for (int x : list.front()) img.push_back(p[x]);
      std::sort(img.begin(), img.end());
      orbit.insert(img);
    }
    if (orbit != all) return false;
  }
  return true;
}

}  // namespace

FlowReport minimal_flow_check_NO(const FinStructure& s, const OrderClassK& k,
                                 const PermGroup& g) {
  FlowReport rep;
  if (g.degree() != s.n) fail(err::PreconditionFailed, "group must act on the structure's universe");
  PermGroup aut = automorphism_group(reduct_of(s));
  if (!g.is_subgroup_of(aut)) fail(err::PreconditionFailed, "G must consist of automorphisms");

  auto no = no_space(reduct_of(s), k);
  if (no.empty()) fail(err::PreconditionFailed, "the normal-ordering space is empty");
  rep.no_points = int(no.size());

  rep.density_surrogate = density_surrogate_holds(reduct_of(s), g);

  GroupAction flow = order_flow(g, no);
  rep.minimality = is_minimal(flow);

  const int ng = int(g.order());
  auto universes = all_substructure_universes(reduct_of(s));
  for (const auto& universe : universes) {
    GeneratedSub gs = induced_substructure(reduct_of(s), universe);
    // K-orders on the substructure, transported to element chains in S.
    auto korders = k_orders_on(gs.sub, k);
    PermGroup g_pw = pointwise_stabilizer(g, universe);
    PermGroup g_sw = setwise_stabilizer(g, universe);
    int index = int(g_sw.order() / g_pw.order());

    for (const auto& korder : korders) {
      std::vector<int> sub_chain = chain_of(korder);  // sub codes by rank
      std::vector<int> window_chain;
      for (int e : sub_chain) window_chain.push_back(gs.inclusion.map[e]);

      // Window membership: a normal order restricts to this chain on A.
      Bitset window(int(no.size()));
      for (size_t oi = 0; oi < no.size(); ++oi) {
        std::vector<int> restricted = window_chain;
        std::sort(restricted.begin(), restricted.end(),
                  [&](int x, int y) { return no[oi].rank[x] < no[oi].rank[y]; });
        if (restricted == window_chain) window.set(int(oi));
      }

      ++rep.rows_checked;
      FlowBoundRow row;
      row.universe = universe;
      row.window_chain = window_chain;
      row.coset_index = index;

      // ret(<, window) for every normal order <.  When the flow is
      // transitive, ret(g.x0, W) = ret(x0, W) g^{-1}, so the exact cover
      // bound is shared; the identity is verified extensionally per order
      // and the bound computed once.
      const auto& mul = g.mul_table();
      const auto& invt = g.inverse_table();
      std::vector<Bitset> rets(no.size(), Bitset(ng));
      for (size_t oi = 0; oi < no.size(); ++oi)
        for (int gi = 0; gi < ng; ++gi)
          if (window.test(flow.apply(gi, int(oi)))) rets[oi].set(gi);

      bool translate_reduction = rep.minimality.minimal;
      if (translate_reduction) {
        // carriers: some g with g.x0 = oi
        std::vector<int> carrier(no.size(), -1);
        for (int gi = 0; gi < ng; ++gi) {
          int img = flow.apply(gi, 0);
          if (carrier[img] < 0) carrier[img] = gi;
        }
        auto base_members = rets[0].members();
        for (size_t oi = 0; oi < no.size() && translate_reduction; ++oi) {
          Bitset expect(ng);
          for (int si : base_members) expect.set(mul[si][invt[carrier[oi]]]);
          if (expect != rets[oi]) translate_reduction = false;
        }
      }

      if (translate_reduction) {
        row.ret_size = rets[0].count();
        auto bound = syndetic_bound(g, rets[0]);
        row.bound = bound.value_or(0);
        row.within = bound.has_value() && *bound <= index;
        if (!row.within) {
          rep.bounds_hold = false;
          rep.violations.push_back(row);
        }
      } else {
        for (size_t oi = 0; oi < no.size(); ++oi) {
          row.ret_size = rets[oi].count();
          auto bound = syndetic_bound(g, rets[oi]);
          row.bound = bound.value_or(0);
          row.within = bound.has_value() && *bound <= index;
          if (!row.within) {
            rep.bounds_hold = false;
            rep.violations.push_back(row);
            break;  // one violating order suffices for the report
          }
        }
      }
    }
  }
  return rep;
}

ColoringTraceResult proof_coloring_trace(const PermGroup& g, const FinStructure& s,
                                         const std::vector<int>& a_universe, const Bitset& h,
                                         const std::vector<int>& h_cover_translates,
                                         const std::vector<int>& complement_cover_translates) {
  ColoringTraceResult out;
  const auto& elems = g.elements();
  const int ng = int(elems.size());
  if (h.size() != ng) fail(err::MalformedH, "H must be a subset of the group");
  if (h.none()) fail(err::MalformedH, "H must be nonempty");

  // H must be saturated on the left by the pointwise stabilizer.
  PermGroup g_pw = pointwise_stabilizer(g, a_universe);
  PermGroup g_sw = setwise_stabilizer(g, a_universe);
  for (const Perm& u : g_pw.elements())
    for (int gi = 0; gi < ng; ++gi)
      if (h.test(gi) && !h.test(g.index_of(perm_compose(u, elems[gi]))))
        fail(err::MalformedH, "H is not saturated by the pointwise stabilizer");

  // H' = S^A H for a left transversal S^A of the pointwise stabilizer in the
  // setwise stabilizer.
  Bitset h_prime(ng);
  for (const Perm& sigma : left_coset_representatives(g_pw, g_sw))
    for (int gi = 0; gi < ng; ++gi)
      if (h.test(gi)) h_prime.set(g.index_of(perm_compose(sigma, elems[gi])));

  Bitset complement = ~h_prime;
  if (complement.none()) {
    out.complement_empty = true;
    out.note = "H' covers the group; no contradiction needed";
    return out;
  }

  auto covers = [&](const Bitset& set, const std::vector<int>& translate_indices) {
    Bitset u(ng);
    for (int ti : translate_indices)
      for (int gi = 0; gi < ng; ++gi)
        if (set.test(gi)) u.set(g.index_of(perm_compose(elems[ti], elems[gi])));
    return u.count() == ng;
  };
  out.h_cover_ok = covers(h_prime, h_cover_translates);
  out.complement_cover_ok = covers(complement, complement_cover_translates);
  if (!out.h_cover_ok || !out.complement_cover_ok) {
    out.note = !out.h_cover_ok ? "claimed translates do not cover with H'"
                               : "claimed translates do not cover with the complement";
    return out;
  }

  // The induced two-coloring of A-copies: color 0 iff some h in H carries A
  // onto the copy by h^{-1}.
  GeneratedSub ga = induced_substructure(s, a_universe);
  CopySet copies = enumerate_copies(ga.sub, s);
  auto copy_index = [&](std::vector<int> img) -> int {
    std::sort(img.begin(), img.end());
    auto it = std::lower_bound(copies.copies.begin(), copies.copies.end(), img);
    if (it == copies.copies.end() || *it != img) return -1;
    return int(it - copies.copies.begin());
  };
  out.coloring.assign(copies.copies.size(), 1);
  for (int gi = 0; gi < ng; ++gi) {
    if (!h.test(gi)) continue;
    Perm inv = perm_inverse(elems[gi]);
    std::vector<int> img;
    for (int x : a_universe) img.push_back(inv[x]);
    int ci = copy_index(img);
    if (ci >= 0) out.coloring[ci] = 0;
  }

  // Window: substructure generated by the translate images of A.
  std::vector<int> seed;
  std::set<int> used(h_cover_translates.begin(), h_cover_translates.end());
  used.insert(complement_cover_translates.begin(), complement_cover_translates.end());
  for (int ti : used)
    for (int x : a_universe) seed.push_back(elems[ti][x]);
  GeneratedSub window = substructure_generated(s, seed);
  out.window = window.inclusion.map;
  std::sort(out.window.begin(), out.window.end());

  // Monochromatic copy of the window with respect to the induced coloring.
  Coloring col;
  col.copyset = std::make_shared<const CopySet>(copies);
  col.k = 2;
  col.colors = out.coloring;
  auto mono = find_monochromatic_copy(s, window.sub, ga.sub, col);
  if (!mono) {
    out.note = "no monochromatic window copy exists at this finite scale";
    return out;
  }
  out.mono_found = true;
  out.mono_copy = mono->copy;
  out.mono_color = mono->color;

  // The contradiction element: f maps the monochromatic copy onto the window.
  for (int gi = 0; gi < ng; ++gi) {
    std::vector<int> img;
    for (int x : mono->copy) img.push_back(elems[gi][x]);
    std::sort(img.begin(), img.end());
    if (img == out.window) {
      out.contradiction_f = elems[gi];
      break;
    }
  }
  if (out.contradiction_f)
    out.note = "monochromatic window found; the two cover claims are inconsistent";
  else
    out.note = "monochromatic window found but no group element maps it onto the window";
  return out;
}

}  // namespace umfw
