#include "umfw/samuel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace umfw {

namespace {

Bitset left_translate(const PermGroup& g, int hi, const Bitset& s) {
  const auto& mul = g.mul_table();
  Bitset out(int(g.order()));
  for (int si : s.members()) out.set(mul[hi][si]);
  return out;
}

Bitset conjugate(const PermGroup& g, int hi, const Bitset& s) {
  const auto& mul = g.mul_table();
  const auto& inv = g.inverse_table();
  Bitset out(int(g.order()));
  for (int si : s.members()) out.set(mul[mul[hi][si]][inv[hi]]);
  return out;
}

}  // namespace

bool is_subgroup_subset(const PermGroup& g, const Bitset& s) {
  if (!s.test(0)) return false;  // identity has index 0 (lex-least element)
  const auto& mul = g.mul_table();
  const auto& inv = g.inverse_table();
  auto members = s.members();
  for (int a : members) {
    if (!s.test(inv[a])) return false;
    for (int b : members)
      if (!s.test(mul[a][b])) return false;
  }
  return true;
}

std::vector<Bitset> all_subgroups(const PermGroup& g) {
  const int n = int(g.order());
  const auto& mul = g.mul_table();
  const auto& inv = g.inverse_table();
  auto closure = [&](Bitset seed) {
    std::vector<int> frontier = seed.members();
    seed.set(0);
    frontier.push_back(0);
    for (size_t i = 0; i < frontier.size(); ++i) {
      int a = frontier[i];
      int ia = inv[a];
      if (!seed.test(ia)) {
        seed.set(ia);
        frontier.push_back(ia);
      }
      for (size_t j = 0; j <= i; ++j) {
        for (int c : {mul[a][frontier[j]], mul[frontier[j]][a]})
          if (!seed.test(c)) {
            seed.set(c);
            frontier.push_back(c);
          }
      }
    }
    return seed;
  };
  std::set<Bitset> subs;
  subs.insert(closure(Bitset(n)));
  // Close the set of cyclic subgroups under pairwise joins until stable.
  for (int a = 0; a < n; ++a) {
    Bitset s(n);
    s.set(a);
    subs.insert(closure(s));
  }
  for (;;) {
    std::set<Bitset> next = subs;
    for (const auto& x : subs)
      for (const auto& y : subs) {
        Bitset u = x | y;
        if (!(u == x) && !(u == y)) next.insert(closure(u));
      }
    if (next.size() == subs.size()) break;
    subs.swap(next);
  }
  return {subs.begin(), subs.end()};
}

SubgroupFamily make_family(const PermGroup& g, std::vector<Bitset> members) {
  SubgroupFamily fam;
  fam.group = g;
  const int n = int(g.order());
  if (members.empty()) fail(err::InvalidFamily, "family must be nonempty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  bool has_g = false;
  for (const auto& m : members) {
    if (m.size() != n || !is_subgroup_subset(g, m))
      fail(err::InvalidFamily, "family member is not a subgroup");
    if (m.count() == n) has_g = true;
  }
  if (!has_g) fail(err::InvalidFamily, "family must contain the whole group");
  // Directedness in a finite family reduces to a least member.
  int least = 0;
  for (size_t i = 1; i < members.size(); ++i)
    if (members[i].count() < members[least].count()) least = int(i);
  for (const auto& m : members)
    if (!members[least].is_subset_of(m))
      fail(err::InvalidFamily, "family is not downward directed");
  // Conjugation closure.
  std::set<Bitset> have(members.begin(), members.end());
  for (const auto& m : members)
    for (int hi = 0; hi < n; ++hi)
      if (!have.count(conjugate(g, hi, m)))
        fail(err::InvalidFamily, "family is not closed under conjugation");
  fam.members = std::move(members);
  fam.least = least;
  return fam;
}

std::vector<SubgroupFamily> all_valid_families(const PermGroup& g, size_t cap) {
  auto subs = all_subgroups(g);
  const int n = int(g.order());
  const int k = int(subs.size());
  if (k > 20) fail(err::BoundTooLarge, "too many subgroups for family enumeration");
  int full = -1;
  for (int i = 0; i < k; ++i)
    if (subs[i].count() == n) full = i;

  // Conjugacy classes of subgroups; a conjugation-closed family is a union of
  // classes, which prunes the subset scan.
  std::vector<int> cls(k, -1);
  int nc = 0;
  for (int i = 0; i < k; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = nc;
    for (int hi = 0; hi < n; ++hi) {
      Bitset c = conjugate(g, hi, subs[i]);
      for (int j = 0; j < k; ++j)
        if (subs[j] == c) cls[j] = nc;
    }
    ++nc;
  }
  std::vector<std::vector<int>> class_members(nc);
  for (int i = 0; i < k; ++i) class_members[cls[i]].push_back(i);

  std::vector<SubgroupFamily> out;
  for (long mask = 0; mask < (1L << nc); ++mask) {
    if (!((mask >> cls[full]) & 1)) continue;
    std::vector<Bitset> members;
    for (int c = 0; c < nc; ++c)
      if ((mask >> c) & 1)
        for (int i : class_members[c]) members.push_back(subs[i]);
    try {
      out.push_back(make_family(g, members));
    } catch (const Error&) {
      continue;  // not directed
    }
    if (out.size() >= cap) fail(err::BoundTooLarge, "family enumeration exceeded the cap");
  }
  return out;
}

bool SetFamilyAlgebra::contains_set(const Bitset& s) const {
  return std::binary_search(sets.begin(), sets.end(), s);
}

int SetFamilyAlgebra::atom_of(int carrier_element) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].test(carrier_element)) return int(i);
  return -1;
}

SetFamilyAlgebra build_L(const PermGroup& g, const SubgroupFamily& n) {
  const int ng = int(g.order());
  const auto& mul = g.mul_table();
  const Bitset v0 = n.intersection();
  SetFamilyAlgebra l;
  l.carrier = ng;

  // Atoms: right cosets V0 x.
  std::vector<int> atom_of(ng, -1);
  for (int x = 0; x < ng; ++x) {
    if (atom_of[x] >= 0) continue;
    Bitset coset(ng);
    for (int v : v0.members()) coset.set(mul[v][x]);
    int idx = int(l.atoms.size());
    for (int y : coset.members()) atom_of[y] = idx;
    l.atoms.push_back(coset);
    l.atom_tags.push_back({n.least, x});
  }
  const int na = int(l.atoms.size());
  if (na > 14) fail(err::BoundTooLarge, "algebra too large to materialize");

  for (int mask = 0; mask < (1 << na); ++mask) {
    Bitset s(ng);
    for (int a = 0; a < na; ++a)
      if ((mask >> a) & 1) s |= l.atoms[a];
    l.sets.push_back(s);
  }
  std::sort(l.sets.begin(), l.sets.end());

  // The coset description: every member is fixed by left multiplication by
  // V0, and every translate Vx of a family member is in the algebra.
  for (const auto& s : l.sets) {
    Bitset vs(ng);
    for (int v : v0.members())
      for (int x : s.members()) vs.set(mul[v][x]);
    if (!(vs == s)) fail(err::CriteriaDisagree, "algebra member not fixed by the least member");
  }
  for (const auto& v : n.members)
    for (int x = 0; x < ng; ++x) {
      Bitset coset(ng);
      for (int vi : v.members()) coset.set(mul[vi][x]);
      if (!l.contains_set(coset))
        fail(err::CriteriaDisagree, "coset of a family member escapes the algebra");
    }
  return l;
}

StoneSpace stone_space(const SetFamilyAlgebra& l, const PermGroup& g) {
  StoneSpace sp;
  sp.algebra = l;
  const int na = int(l.atoms.size());
  sp.action = GroupAction::build(g, na, [&](const Perm& p, int a) {
    int gi = g.index_of(p);
    int rep = l.atoms[a].first_set();
    int target = l.atom_of(g.mul_table()[gi][rep]);
    // Ultrafilter-image law: the set image of the atom is exactly an atom.
    Bitset img = left_translate(g, gi, l.atoms[a]);
    if (!(img == l.atoms[target]))
      fail(err::CriteriaDisagree, "group image of an atom is not an atom");
    return target;
  });
  return sp;
}

int semigroup_mul(int u, int v, const SetFamilyAlgebra& l, const PermGroup& g) {
  const int na = int(l.atoms.size());
  const int ng = int(g.order());
  const auto& mul = g.mul_table();
  const auto& inv = g.inverse_table();
  if (u < 0 || u >= na || v < 0 || v >= na) fail(err::NoSuchAtom, "atom index out of range");

  // Generator membership: atom a is in uv iff D(a) = {g : g^{-1}a >= atom_v}
  // contains atom_u.
  std::vector<char> in_uv(na, 0);
  int w = -1;
  for (int a = 0; a < na; ++a) {
    Bitset d(ng);
    for (int gi = 0; gi < ng; ++gi) {
      Bitset pre(ng);
      for (int x : l.atoms[a].members()) pre.set(mul[inv[gi]][x]);
      if (l.atoms[v].is_subset_of(pre)) d.set(gi);
    }
    in_uv[a] = l.atoms[u].is_subset_of(d);
    if (in_uv[a]) {
      if (w >= 0) fail(err::NoSuchAtom, "ultrafilter product contains two atoms");
      w = a;
    }
  }
  if (w < 0) fail(err::NoSuchAtom, "ultrafilter product contains no atom");

  // Quotient-group comparison: w must be the coset of (rep_u * rep_v).
  int ru = l.atoms[u].first_set(), rv = l.atoms[v].first_set();
  if (l.atom_of(mul[ru][rv]) != w)
    fail(err::CriteriaDisagree, "ultrafilter product disagrees with the quotient product");
  return w;
}

AtomSemigroup semigroup_table(const SetFamilyAlgebra& l, const PermGroup& g) {
  const int na = int(l.atoms.size());
  AtomSemigroup sg;
  sg.mul.assign(na, std::vector<int>(na));
  for (int u = 0; u < na; ++u)
    for (int v = 0; v < na; ++v) sg.mul[u][v] = semigroup_mul(u, v, l, g);
  for (int a = 0; a < na && sg.associative; ++a)
    for (int b = 0; b < na && sg.associative; ++b)
      for (int c = 0; c < na; ++c)
        if (sg.mul[sg.mul[a][b]][c] != sg.mul[a][sg.mul[b][c]]) {
          sg.associative = false;
          break;
        }
  return sg;
}

namespace {

// G-flow isomorphism between two invariant point subsets of the same action:
// a bijection commuting with every group element.
bool flows_isomorphic(const GroupAction& action, const std::vector<int>& is,
                      const std::vector<int>& js) {
  if (is.size() != js.size()) return false;
  const int ng = int(action.group().order());
  for (int y0 : js) {
    std::map<int, int> phi;
    bool ok = true;
    // orbit extension from is[0] -> y0
    std::vector<std::pair<int, int>> frontier = {{is[0], y0}};
    phi[is[0]] = y0;
    for (size_t t = 0; t < frontier.size() && ok; ++t)
      for (int gi = 0; gi < ng; ++gi) {
        int x2 = action.apply(gi, frontier[t].first);
        int y2 = action.apply(gi, frontier[t].second);
        auto it = phi.find(x2);
        if (it == phi.end()) {
          phi[x2] = y2;
          frontier.push_back({x2, y2});
        } else if (it->second != y2) {
          ok = false;
          break;
        }
      }
    if (!ok) continue;
    if (phi.size() != is.size()) continue;  // not transitive from is[0]
    std::set<int> image;
    for (auto& [x, y] : phi) image.insert(y);
    if (int(image.size()) == int(js.size()) && ok) return true;
  }
  return false;
}

}  // namespace

IdealsReport minimal_left_ideals(const AtomSemigroup& sg, const StoneSpace& space) {
  IdealsReport rep;
  const int na = int(sg.mul.size());
  std::set<std::vector<int>> ideals;
  for (int x = 0; x < na; ++x) {
    std::set<int> ideal = {x};
    for (int s = 0; s < na; ++s) ideal.insert(sg.mul[s][x]);
    // left ideals: close under further left multiplication
    for (;;) {
      std::set<int> next = ideal;
      for (int y : ideal)
        for (int s = 0; s < na; ++s) next.insert(sg.mul[s][y]);
      if (next.size() == ideal.size()) break;
      ideal.swap(next);
    }
    ideals.insert(std::vector<int>(ideal.begin(), ideal.end()));
  }
  // keep inclusion-minimal ones
  for (const auto& cand : ideals) {
    bool minimal = true;
    for (const auto& other : ideals) {
      if (other == cand) continue;
      if (std::includes(cand.begin(), cand.end(), other.begin(), other.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) rep.ideals.push_back(cand);
  }

  // Each minimal left ideal must be an invariant subset that is minimal as a
  // subflow (the G-orbit of every point is the whole ideal).
  const int ng = int(space.action.group().order());
  for (const auto& ideal : rep.ideals) {
    std::set<int> in(ideal.begin(), ideal.end());
    for (int x : ideal) {
      std::set<int> orbit;
      for (int gi = 0; gi < ng; ++gi) orbit.insert(space.action.apply(gi, x));
      if (orbit != in) {
        rep.each_minimal_subflow = false;
        break;
      }
    }
  }
  for (size_t i = 0; i + 1 < rep.ideals.size(); ++i)
    if (!flows_isomorphic(space.action, rep.ideals[i], rep.ideals[i + 1]))
      rep.pairwise_isomorphic = false;
  return rep;
}

bool is_syndetic_subalgebra(const SetFamilyAlgebra& b, const PermGroup& g) {
  const int ng = int(g.order());
  // Boolean closure: the sets are all unions of the atom partition, so it
  // suffices that the atoms partition the carrier and the count matches;
  // small algebras get the extensional closure check too.
  Bitset all(b.carrier);
  for (size_t i = 0; i < b.atoms.size(); ++i) {
    if ((all & b.atoms[i]).any()) return false;
    all |= b.atoms[i];
  }
  if (all.count() != b.carrier) return false;
  if (b.sets.size() != (size_t{1} << b.atoms.size())) return false;
  if (b.sets.size() <= 256) {
    for (const auto& s : b.sets) {
      if (!b.contains_set(~s)) return false;
      for (const auto& t : b.sets)
        if (!b.contains_set(s | t)) return false;
    }
  }
  // Left-translation invariance: images of atoms must stay in the algebra
  // (unions of atoms then follow).  Nonempty members of a finite group are
  // syndetic automatically (the full translate family always covers).
  for (const auto& a : b.atoms)
    for (int hi = 0; hi < ng; ++hi)
      if (!b.contains_set(left_translate(g, hi, a))) return false;
  return true;
}

namespace {

SetFamilyAlgebra subalgebra_from_atom_partition(const SetFamilyAlgebra& l,
                                                const std::vector<int>& rgs, int blocks) {
  SetFamilyAlgebra b;
  b.carrier = l.carrier;
  std::vector<Bitset> batoms(blocks, Bitset(l.carrier));
  for (size_t a = 0; a < l.atoms.size(); ++a) batoms[rgs[a]] |= l.atoms[a];
  b.atoms = batoms;
  for (int mask = 0; mask < (1 << blocks); ++mask) {
    Bitset s(l.carrier);
    for (int i = 0; i < blocks; ++i)
      if ((mask >> i) & 1) s |= batoms[i];
    b.sets.push_back(s);
  }
  std::sort(b.sets.begin(), b.sets.end());
  return b;
}

}  // namespace

SetFamilyAlgebra maximal_syndetic_subalgebra(const SetFamilyAlgebra& l, const PermGroup& g) {
  if (is_syndetic_subalgebra(l, g)) return l;  // nothing above it inside L
  // Lattice search over subalgebras (partitions of the atoms), largest first.
  const int na = int(l.atoms.size());
  if (na > 9) fail(err::BoundTooLarge, "subalgebra lattice too large");
  std::vector<SetFamilyAlgebra> best;
  for (int blocks = na; blocks >= 1 && best.empty(); --blocks) {
    std::vector<SetFamilyAlgebra> found;
    std::vector<int> rgs(na, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
      if (na - i < blocks - used) return;
      if (i == na) {
        if (used == blocks) {
          auto b = subalgebra_from_atom_partition(l, rgs, blocks);
          if (is_syndetic_subalgebra(b, g)) found.push_back(b);
        }
        return;
      }
      for (int v = 0; v < std::min(used + 1, blocks); ++v) {
        rgs[i] = v;
        rec(i + 1, std::max(used, v + 1));
      }
    };
    rec(0, 0);
    if (!found.empty()) {
      // all maximal ones must be isomorphic (equal atom counts for finite
      // boolean algebras)
      for (const auto& f : found)
        if (f.atoms.size() != found.front().atoms.size())
          fail(err::CriteriaDisagree, "maximal syndetic subalgebras of different sizes");
      best.push_back(found.front());
    }
  }
  if (best.empty()) fail(err::CriteriaDisagree, "no syndetic subalgebra found");
  return best.front();
}

RetCorrespondenceReport ret_algebra_correspondence(const SetFamilyAlgebra& l, const PermGroup& g) {
  RetCorrespondenceReport rep;
  StoneSpace sp = stone_space(l, g);
  AtomSemigroup sg = semigroup_table(l, g);
  IdealsReport ideals = minimal_left_ideals(sg, sp);
  if (ideals.ideals.empty()) fail(err::CriteriaDisagree, "no minimal left ideal");
  const auto& m_ideal = ideals.ideals.front();
  rep.ideal_size = int(m_ideal.size());
  rep.base_point = m_ideal.front();  // least atom in the ideal

  const int ng = int(g.order());
  std::set<Bitset> ret_family;
  for (int mask = 0; mask < (1 << m_ideal.size()); ++mask) {
    std::set<int> o;
    for (size_t i = 0; i < m_ideal.size(); ++i)
      if ((mask >> i) & 1) o.insert(m_ideal[i]);
    Bitset ret(ng);
    for (int gi = 0; gi < ng; ++gi)
      if (o.count(sp.action.apply(gi, rep.base_point))) ret.set(gi);
    ret_family.insert(ret);
  }
  SetFamilyAlgebra maxsynd = maximal_syndetic_subalgebra(l, g);
  std::set<Bitset> synd_sets(maxsynd.sets.begin(), maxsynd.sets.end());
  rep.holds = ret_family == synd_sets;
  if (!rep.holds)
    fail(err::CorrespondenceFailed, "return-set algebra differs from the maximal syndetic subalgebra");
  return rep;
}

EmbedSymReport embed_into_sym(const PermGroup& g, const SubgroupFamily& n) {
  EmbedSymReport rep;
  const int ng = int(g.order());
  const auto& mul = g.mul_table();

  // All distinct left translates xV of family members.
  std::set<Bitset> translate_set;
  for (const auto& v : n.members)
    for (int x = 0; x < ng; ++x) {
      Bitset t(ng);
      for (int vi : v.members()) t.set(mul[x][vi]);
      translate_set.insert(t);
    }
  std::vector<Bitset> translates(translate_set.begin(), translate_set.end());
  rep.degree = int(translates.size());
  auto index_of_translate = [&](const Bitset& t) {
    auto it = std::lower_bound(translates.begin(), translates.end(), t);
    return int(it - translates.begin());
  };

  rep.images.resize(ng);
  for (int gi = 0; gi < ng; ++gi) {
    Perm pi(rep.degree);
    for (int t = 0; t < rep.degree; ++t)
      pi[t] = index_of_translate(left_translate(g, gi, translates[t]));
    if (!is_permutation(pi)) fail(err::CriteriaDisagree, "translate action is not a permutation");
    rep.images[gi] = pi;
  }
  for (int a = 0; a < ng && rep.homomorphism; ++a)
    for (int b = 0; b < ng; ++b)
      if (rep.images[mul[a][b]] != perm_compose(rep.images[a], rep.images[b])) {
        rep.homomorphism = false;
        break;
      }

  Perm id = perm_identity(rep.degree);
  Bitset kernel(ng);
  for (int gi = 0; gi < ng; ++gi)
    if (rep.images[gi] == id) kernel.set(gi);
  rep.kernel_size = kernel.count();
  rep.kernel_is_intersection = kernel == n.intersection();
  rep.separating_family = n.intersection().count() == 1;
  rep.injective = rep.kernel_size == 1;

  // Stabilizer correspondence per member H: the images of H are exactly the
  // image elements fixing the translate H itself.
  for (const auto& h : n.members) {
    int ih = index_of_translate(h);
    std::set<Perm> lhs, rhs;
    for (int hi : h.members()) lhs.insert(rep.images[hi]);
    for (int gi = 0; gi < ng; ++gi)
      if (rep.images[gi][ih] == ih) rhs.insert(rep.images[gi]);
    if (lhs != rhs) {
      rep.stabilizer_property = false;
      break;
    }
  }
  return rep;
}

bool SamuelInstanceReport::all_ok() const {
  return l_boolean_closed && l_left_invariant && stone_action_ok && mul_matches_quotient &&
         mul_associative && right_translations_ok && num_minimal_ideals >= 1 && ideals_ok &&
         maxsynd_is_l && theorem_flow_iso && ret_correspondence && embed.homomorphism &&
         embed.kernel_is_intersection && embed.stabilizer_property &&
         embed.injective == embed.separating_family;
}

SamuelInstanceReport samuel_check_instance(const PermGroup& g, const SubgroupFamily& n) {
  SamuelInstanceReport rep;
  rep.group_order = int(g.order());
  rep.family_size = int(n.members.size());

  SetFamilyAlgebra l = build_L(g, n);
  rep.l_atoms = int(l.atoms.size());
  rep.l_boolean_closed = true;  // asserted during construction
  rep.l_left_invariant = is_syndetic_subalgebra(l, g);

  StoneSpace sp = stone_space(l, g);
  rep.stone_action_ok = true;  // asserted during construction

  AtomSemigroup sg = semigroup_table(l, g);  // checks quotient agreement per pair
  rep.mul_matches_quotient = true;
  rep.mul_associative = sg.associative;

  // Right translations are well-defined self-maps (total columns).
  rep.right_translations_ok = true;
  for (size_t u = 0; u < sg.mul.size() && rep.right_translations_ok; ++u)
    for (size_t v = 0; v < sg.mul.size(); ++v)
      if (sg.mul[u][v] < 0 || sg.mul[u][v] >= int(sg.mul.size())) {
        rep.right_translations_ok = false;
        break;
      }

  IdealsReport ideals = minimal_left_ideals(sg, sp);
  rep.num_minimal_ideals = int(ideals.ideals.size());
  rep.ideals_ok = ideals.each_minimal_subflow && ideals.pairwise_isomorphic;

  SetFamilyAlgebra maxsynd = maximal_syndetic_subalgebra(l, g);
  rep.maxsynd_is_l = maxsynd.sets == l.sets;

  // Stone space of the maximal syndetic subalgebra vs the minimal ideal, as
  // G-flows.
  {
    StoneSpace msp = stone_space(maxsynd, g);
    std::vector<int> all_points(msp.algebra.atoms.size());
    for (size_t i = 0; i < all_points.size(); ++i) all_points[i] = int(i);
    const auto& ideal = ideals.ideals.front();
    if (all_points.size() != ideal.size()) {
      rep.theorem_flow_iso = false;
    } else {
      // compare flows across the two actions via a joint product action
      // trick: both live over the same group; test isomorphism directly.
      const int ng = int(g.order());
      rep.theorem_flow_iso = false;
      for (size_t cand = 0; cand < ideal.size() && !rep.theorem_flow_iso; ++cand) {
        std::map<int, int> phi;
        bool ok = true;
        std::vector<std::pair<int, int>> frontier = {{all_points[0], ideal[cand]}};
        phi[all_points[0]] = ideal[cand];
        for (size_t t = 0; t < frontier.size() && ok; ++t)
          for (int gi = 0; gi < ng; ++gi) {
            int x2 = msp.action.apply(gi, frontier[t].first);
            int y2 = sp.action.apply(gi, frontier[t].second);
            auto it = phi.find(x2);
            if (it == phi.end()) {
              phi[x2] = y2;
              frontier.push_back({x2, y2});
            } else if (it->second != y2) {
              ok = false;
              break;
            }
          }
        if (!ok || phi.size() != all_points.size()) continue;
        std::set<int> img;
        for (auto& [x, y] : phi) img.insert(y);
        if (img.size() == ideal.size()) rep.theorem_flow_iso = true;
      }
    }
  }

  rep.ret_correspondence = ret_algebra_correspondence(l, g).holds;
  rep.embed = embed_into_sym(g, n);
  return rep;
}

}  // namespace umfw
