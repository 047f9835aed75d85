#include "umfw/catalog.hpp"

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "umfw/orders.hpp"

namespace umfw {

namespace {

// Mirror of data/groups.json; the checked-in file is authoritative when
// present, this copy keeps library consumers standalone.
const char* kBuiltinGroups = R"json(
{
  "groups": [
    {"name": "C1", "degree": 1, "generators": []},
    {"name": "C2", "degree": 2, "generators": [[1, 0]]},
    {"name": "C3", "degree": 3, "generators": [[1, 2, 0]]},
    {"name": "C4", "degree": 4, "generators": [[1, 2, 3, 0]]},
    {"name": "C5", "degree": 5, "generators": [[1, 2, 3, 4, 0]]},
    {"name": "C6", "degree": 6, "generators": [[1, 2, 3, 4, 5, 0]]},
    {"name": "C7", "degree": 7, "generators": [[1, 2, 3, 4, 5, 6, 0]]},
    {"name": "C8", "degree": 8, "generators": [[1, 2, 3, 4, 5, 6, 7, 0]]},
    {"name": "C9", "degree": 9, "generators": [[1, 2, 3, 4, 5, 6, 7, 8, 0]]},
    {"name": "C10", "degree": 10, "generators": [[1, 2, 3, 4, 5, 6, 7, 8, 9, 0]]},
    {"name": "C11", "degree": 11, "generators": [[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0]]},
    {"name": "C12", "degree": 12, "generators": [[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0]]},
    {"name": "V4", "degree": 4, "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]},
    {"name": "S3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]},
    {"name": "D4", "degree": 4, "generators": [[1, 2, 3, 0], [3, 2, 1, 0]]},
    {"name": "D5", "degree": 5, "generators": [[1, 2, 3, 4, 0], [4, 3, 2, 1, 0]]},
    {"name": "D6", "degree": 6, "generators": [[1, 2, 3, 4, 5, 0], [5, 4, 3, 2, 1, 0]]},
    {"name": "A4", "degree": 4, "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]},
    {"name": "Q8", "degree": 8, "generators": [[1, 4, 3, 6, 5, 0, 7, 2], [2, 7, 4, 1, 6, 3, 0, 5]]}
  ]
}
)json";

nlohmann::json load_group_data(const std::string& data_path) {
  std::vector<std::string> candidates;
  if (!data_path.empty()) candidates.push_back(data_path);
  candidates.push_back("data/groups.json");
  candidates.push_back("../data/groups.json");
  for (const auto& path : candidates) {
    std::ifstream in(path);
    if (in.good()) {
      nlohmann::json j;
      in >> j;
      return j;
    }
  }
  return nlohmann::json::parse(kBuiltinGroups);
}

}  // namespace

std::vector<CatalogGroup> catalog_groups(const std::string& data_path) {
  nlohmann::json j = load_group_data(data_path);
  std::vector<CatalogGroup> out;
  for (const auto& item : j.at("groups")) {
    CatalogGroup cg;
    cg.name = item.at("name").get<std::string>();
    int degree = item.at("degree").get<int>();
    std::vector<Perm> gens;
    for (const auto& g : item.at("generators")) gens.push_back(g.get<std::vector<int>>());
    if (gens.empty()) gens.push_back(perm_identity(degree));
    cg.group = PermGroup::from_generators(degree, gens);
    out.push_back(std::move(cg));
  }
  return out;
}

CatalogGroup catalog_group(const std::string& name, const std::string& data_path) {
  for (auto& cg : catalog_groups(data_path))
    if (cg.name == name) return cg;
  fail(err::InvalidDescriptor, "unknown catalog group: " + name);
}

std::vector<CatalogAction> catalog_action_suite() {
  std::vector<CatalogAction> suite;

  // Symmetric groups on their order spaces.
  for (int n = 1; n <= 4; ++n) {
    PermGroup sn = PermGroup::symmetric(n);
    GroupAction flow = order_flow(sn, all_linear_orders(n));
    suite.push_back({"S" + std::to_string(n) + " on LO(" + std::to_string(n) + ")", flow,
                     true});
  }

  auto natural_action = [](const PermGroup& g) {
    return GroupAction::build(g, g.degree(), [](const Perm& p, int x) { return p[x]; });
  };

  for (const auto& cg : catalog_groups()) {
    if (cg.group.order() > 8 || cg.group.degree() > 6) continue;
    bool transitive;
    {
      std::set<int> orbit;
      for (const Perm& p : cg.group.elements()) orbit.insert(p[0]);
      transitive = int(orbit.size()) == cg.group.degree();
    }
    suite.push_back({cg.name + " natural", natural_action(cg.group), transitive});

    // Padded variant: one extra fixed point makes the action non-minimal.
    if (cg.group.degree() <= 5 && cg.group.degree() >= 2) {
      int d = cg.group.degree() + 1;
      std::vector<Perm> gens;
      for (const Perm& g : cg.group.generators()) {
        Perm p = g;
        p.push_back(d - 1);
        gens.push_back(p);
      }
      PermGroup padded = PermGroup::from_generators(d, gens);
      suite.push_back({cg.name + " padded", natural_action(padded), false});
    }
  }

  // Coset flows through normal subgroups (transitive by construction).
  for (const char* name : {"S3", "A4"}) {
    CatalogGroup cg = catalog_group(name);
    const int ng = int(cg.group.order());
    // the normal subgroup of index 2 or 3: conjugation-fixed, proper, maximal
    Bitset pick;
    for (const auto& sub : all_subgroups(cg.group)) {
      int c = sub.count();
      if (c == ng || c == 1) continue;
      SubgroupFamily fam;
      try {
        fam = make_family(cg.group, {Bitset::full(ng), sub});
      } catch (const Error&) {
        continue;
      }
      if (pick.size() == 0 || c > pick.count()) pick = sub;
    }
    if (pick.size() == 0) continue;
    SubgroupFamily fam = make_family(cg.group, {Bitset::full(ng), pick});
    SetFamilyAlgebra l = build_L(cg.group, fam);
    StoneSpace sp = stone_space(l, cg.group);
    suite.push_back({std::string(name) + " coset flow", sp.action, true});
  }

  // Every transitive action of the small catalog groups arises on a coset
  // space; one representative per subgroup conjugacy class, points <= 6.
  for (const auto& cg : catalog_groups()) {
    if (cg.group.order() > 8) continue;
    const int ng = int(cg.group.order());
    const auto& mul = cg.group.mul_table();
    const auto& inv = cg.group.inverse_table();
    auto subs = all_subgroups(cg.group);
    auto conj = [&](int hi, const Bitset& s) {
      Bitset out(ng);
      for (int si : s.members()) out.set(mul[mul[hi][si]][inv[hi]]);
      return out;
    };
    std::set<Bitset> seen_classes;
    std::vector<GroupAction> transitive_pool;
    std::map<int, int> index_counts;
    for (const auto& h : subs) {
      if (seen_classes.count(h)) continue;
      for (int hi = 0; hi < ng; ++hi) seen_classes.insert(conj(hi, h));
      int index = ng / h.count();
      if (index > 6 || index < 1) continue;
      // left cosets xH, acted on by left multiplication
      std::vector<Bitset> cosets;
      std::vector<int> coset_of(ng, -1);
      for (int x = 0; x < ng; ++x) {
        if (coset_of[x] >= 0) continue;
        Bitset cs(ng);
        for (int s : h.members()) cs.set(mul[x][s]);
        int id = int(cosets.size());
        for (int y : cs.members()) coset_of[y] = id;
        cosets.push_back(cs);
      }
      GroupAction act = GroupAction::build(cg.group, int(cosets.size()), [&](const Perm& p, int c) {
        int pi = cg.group.index_of(p);
        return coset_of[mul[pi][cosets[c].first_set()]];
      });
      int repeat = ++index_counts[index];
      std::string label = cg.name + " on cosets of index " + std::to_string(index);
      if (repeat > 1) label += " #" + std::to_string(repeat);
      suite.push_back({label, act, /*transitive*/ true});
      transitive_pool.push_back(act);
    }
    // one intransitive sum per group: the first two coset actions side by side
    if (transitive_pool.size() >= 2) {
      const GroupAction& a1 = transitive_pool[0];
      const GroupAction& a2 = transitive_pool[1];
      int n1 = a1.points(), n2 = a2.points();
      if (n1 + n2 >= 2 && n1 + n2 <= 6) {
        GroupAction sum = GroupAction::build(cg.group, n1 + n2, [&](const Perm& p, int x) {
          int pi = cg.group.index_of(p);
          return x < n1 ? a1.apply(pi, x) : n1 + a2.apply(pi, x - n1);
        });
        suite.push_back({cg.name + " disjoint coset sum", sum, false});
      }
    }
  }

  return suite;
}

}  // namespace umfw
