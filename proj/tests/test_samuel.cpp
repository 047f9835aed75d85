#include <doctest.h>

#include <set>

#include "umfw/catalog.hpp"
#include "umfw/samuel.hpp"

using namespace umfw;

namespace {

// S3 with its alternating subgroup: the running two-point example.
struct S3Fixture {
  PermGroup g = PermGroup::symmetric(3);
  Bitset whole, alt, trivial;

  S3Fixture() {
    const int ng = int(g.order());
    whole = Bitset::full(ng);
    trivial = Bitset(ng);
    trivial.set(0);
    alt = Bitset(ng);
    const auto& elems = g.elements();
    for (int i = 0; i < ng; ++i) {
      // even permutations: 3-cycles and the identity
      int moved = 0;
      for (int x = 0; x < 3; ++x)
        if (elems[i][x] != x) ++moved;
      if (moved == 0 || moved == 3) alt.set(i);
    }
  }
};

}  // namespace

TEST_CASE("family validation") {
  S3Fixture f;
  CHECK(make_family(f.g, {f.whole, f.alt}).members.size() == 2);
  CHECK(make_family(f.g, {f.whole, f.trivial}).members.size() == 2);

  // missing the whole group
  CHECK_THROWS_AS(make_family(f.g, {f.alt}), Error);
  // a transposition subgroup is not conjugation closed
  Bitset c2(int(f.g.order()));
  c2.set(0);
  for (int i = 0; i < int(f.g.order()); ++i) {
    int moved = 0;
    for (int x = 0; x < 3; ++x)
      if (f.g.elements()[i][x] != x) ++moved;
    if (moved == 2) {
      c2.set(i);
      break;
    }
  }
  CHECK_THROWS_AS(make_family(f.g, {f.whole, c2}), Error);
}

TEST_CASE("the invariant-set algebra over S3 and its alternating subgroup") {
  S3Fixture f;
  SubgroupFamily fam = make_family(f.g, {f.whole, f.alt});
  SetFamilyAlgebra l = build_L(f.g, fam);
  CHECK(l.atoms.size() == 2);
  CHECK(l.sets.size() == 4);  // empty, the two cosets, everything

  // discrete family: the whole power set
  SubgroupFamily disc = make_family(f.g, {f.whole, f.trivial});
  SetFamilyAlgebra full = build_L(f.g, disc);
  CHECK(full.atoms.size() == 6);
  CHECK(full.sets.size() == 64);

  // top family: only the trivial algebra
  SubgroupFamily top = make_family(f.g, {f.whole});
  SetFamilyAlgebra tl = build_L(f.g, top);
  CHECK(tl.atoms.size() == 1);
  CHECK(tl.sets.size() == 2);
}

TEST_CASE("stone spaces and the two-point sign flow") {
  S3Fixture f;
  SubgroupFamily fam = make_family(f.g, {f.whole, f.alt});
  SetFamilyAlgebra l = build_L(f.g, fam);
  StoneSpace sp = stone_space(l, f.g);
  CHECK(sp.action.points() == 2);
  // the action factors through the sign: even elements fix both atoms
  for (int gi = 0; gi < int(f.g.order()); ++gi) {
    bool even = f.alt.test(gi);
    CHECK((sp.action.apply(gi, 0) == 0) == even);
  }

  // discrete family: principal atoms, left multiplication
  SubgroupFamily disc = make_family(f.g, {f.whole, f.trivial});
  SetFamilyAlgebra full = build_L(f.g, disc);
  StoneSpace psp = stone_space(full, f.g);
  CHECK(psp.action.points() == 6);
  const auto& mul = f.g.mul_table();
  for (int gi = 0; gi < 6; ++gi)
    for (int x = 0; x < 6; ++x) {
      int rep = full.atoms[x].first_set();
      CHECK(full.atoms[psp.action.apply(gi, x)].test(mul[gi][rep]));
    }
}

TEST_CASE("ultrafilter products recover the quotient multiplication") {
  S3Fixture f;
  SubgroupFamily fam = make_family(f.g, {f.whole, f.alt});
  SetFamilyAlgebra l = build_L(f.g, fam);
  AtomSemigroup sg = semigroup_table(l, f.g);  // internal checks compare to the quotient
  CHECK(sg.associative);
  // two-point group of order 2: 0 is the identity atom (contains e)
  int id_atom = l.atom_of(0);
  CHECK(sg.mul[id_atom][1 - id_atom] == 1 - id_atom);
  CHECK(sg.mul[1 - id_atom][1 - id_atom] == id_atom);

  // identity atom acts neutrally in the power-set case too
  SubgroupFamily disc = make_family(f.g, {f.whole, f.trivial});
  SetFamilyAlgebra full = build_L(f.g, disc);
  AtomSemigroup psg = semigroup_table(full, f.g);
  int e_atom = full.atom_of(0);
  for (int v = 0; v < 6; ++v) CHECK(psg.mul[e_atom][v] == v);
}

TEST_CASE("the product membership condition holds on every algebra set") {
  // uv contains B exactly when { g : g^{-1}[B] contains the v-atom } contains
  // the u-atom, for every B in L (not just the atom generators).
  S3Fixture f;
  const auto& mul = f.g.mul_table();
  const auto& inv = f.g.inverse_table();
  const int ng = int(f.g.order());
  for (auto members : {std::vector<Bitset>{f.whole, f.alt},
                       std::vector<Bitset>{f.whole, f.trivial}}) {
    SubgroupFamily fam = make_family(f.g, members);
    SetFamilyAlgebra l = build_L(f.g, fam);
    const int na = int(l.atoms.size());
    for (int u = 0; u < na; ++u)
      for (int v = 0; v < na; ++v) {
        int w = semigroup_mul(u, v, l, f.g);
        for (const auto& b : l.sets) {
          Bitset d(ng);
          for (int gi = 0; gi < ng; ++gi) {
            Bitset pre(ng);
            for (int x : b.members()) pre.set(mul[inv[gi]][x]);
            if (l.atoms[v].is_subset_of(pre)) d.set(gi);
          }
          bool in_uv = l.atoms[u].is_subset_of(d);
          CHECK(in_uv == l.atoms[w].is_subset_of(b));
        }
      }
  }
}

TEST_CASE("minimal left ideals of group semigroups are everything") {
  S3Fixture f;
  for (auto members : {std::vector<Bitset>{f.whole, f.alt},
                       std::vector<Bitset>{f.whole, f.trivial},
                       std::vector<Bitset>{f.whole}}) {
    SubgroupFamily fam = make_family(f.g, members);
    SetFamilyAlgebra l = build_L(f.g, fam);
    StoneSpace sp = stone_space(l, f.g);
    AtomSemigroup sg = semigroup_table(l, f.g);
    IdealsReport rep = minimal_left_ideals(sg, sp);
    REQUIRE(rep.ideals.size() == 1);
    CHECK(rep.ideals[0].size() == l.atoms.size());
    CHECK(rep.each_minimal_subflow);
    CHECK(rep.pairwise_isomorphic);
  }
}

TEST_CASE("syndetic subalgebras") {
  S3Fixture f;
  SubgroupFamily fam = make_family(f.g, {f.whole, f.alt});
  SetFamilyAlgebra l = build_L(f.g, fam);
  CHECK(is_syndetic_subalgebra(l, f.g));

  SetFamilyAlgebra trivial_alg;
  trivial_alg.carrier = int(f.g.order());
  trivial_alg.atoms = {Bitset::full(int(f.g.order()))};
  trivial_alg.sets = {Bitset(int(f.g.order())), Bitset::full(int(f.g.order()))};
  std::sort(trivial_alg.sets.begin(), trivial_alg.sets.end());
  CHECK(is_syndetic_subalgebra(trivial_alg, f.g));

  CHECK(maximal_syndetic_subalgebra(l, f.g).sets == l.sets);
  CHECK(maximal_syndetic_subalgebra(trivial_alg, f.g).sets == trivial_alg.sets);
}

TEST_CASE("return-set algebra correspondence") {
  S3Fixture f;
  for (auto members : {std::vector<Bitset>{f.whole, f.alt},
                       std::vector<Bitset>{f.whole, f.trivial},
                       std::vector<Bitset>{f.whole}}) {
    SubgroupFamily fam = make_family(f.g, members);
    SetFamilyAlgebra l = build_L(f.g, fam);
    auto rep = ret_algebra_correspondence(l, f.g);
    CHECK(rep.holds);
  }
}

TEST_CASE("embedding into the symmetric group on translates") {
  // order-2 group with the discrete family: three translate objects
  PermGroup c2 = PermGroup::from_generators(2, {Perm{1, 0}});
  Bitset whole = Bitset::full(2), trivial(2);
  trivial.set(0);
  SubgroupFamily fam = make_family(c2, {whole, trivial});
  EmbedSymReport rep = embed_into_sym(c2, fam);
  CHECK(rep.degree == 3);
  CHECK(rep.homomorphism);
  CHECK(rep.injective);
  CHECK(rep.stabilizer_property);
  // the identity maps to the identity
  CHECK(rep.images[0] == perm_identity(3));
  // the swap exchanges the two singleton translates
  CHECK(rep.images[1] != perm_identity(3));

  // S3 with the full chain {G, A3, {e}}: nine translates, injective
  S3Fixture f;
  SubgroupFamily chain = make_family(f.g, {f.whole, f.alt, f.trivial});
  EmbedSymReport rep3 = embed_into_sym(f.g, chain);
  CHECK(rep3.degree == 9);
  CHECK(rep3.homomorphism);
  CHECK(rep3.injective);
  CHECK(rep3.kernel_is_intersection);
  CHECK(rep3.stabilizer_property);

  // non-separating family: kernel = the intersection, not injective
  SubgroupFamily fam_alt = make_family(f.g, {f.whole, f.alt});
  EmbedSymReport repa = embed_into_sym(f.g, fam_alt);
  CHECK(repa.homomorphism);
  CHECK_FALSE(repa.injective);
  CHECK(repa.kernel_size == 3);
  CHECK(repa.kernel_is_intersection);
  CHECK(repa.stabilizer_property);
}

TEST_CASE("full instance report on a catalog sample") {
  for (const char* name : {"S3", "C4", "Q8"}) {
    CatalogGroup cg = catalog_group(name);
    auto families = all_valid_families(cg.group);
    CHECK(!families.empty());
    for (const auto& fam : families) {
      SamuelInstanceReport rep = samuel_check_instance(cg.group, fam);
      INFO(name, " family of size ", fam.members.size());
      CHECK(rep.all_ok());
    }
  }
}

TEST_CASE("subgroup enumeration sanity") {
  PermGroup s3 = PermGroup::symmetric(3);
  CHECK(all_subgroups(s3).size() == 6);  // e, three C2, A3, S3
  CatalogGroup q8 = catalog_group("Q8");
  CHECK(q8.group.order() == 8);
  CHECK(all_subgroups(q8.group).size() == 6);  // e, Z, three C4, Q8
  CatalogGroup a4 = catalog_group("A4");
  CHECK(all_subgroups(a4.group).size() == 10);
}
