#include <doctest.h>

#include <set>

#include "umfw/canonical.hpp"
#include "umfw/orders.hpp"
#include "umfw/dynamics.hpp"
#include "oracles.hpp"

using namespace umfw;

TEST_CASE("all_linear_orders enumerates n! points") {
  CHECK(all_linear_orders(1).size() == 1);
  CHECK(all_linear_orders(3).size() == 6);
  CHECK(all_linear_orders(4).size() == 24);
  CHECK_THROWS_AS(all_linear_orders(9), Error);
}

TEST_CASE("natural boolean orders follow the top-differing-atom rule") {
  auto one = natural_orders_boolean(make_boolalg(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0].order == std::vector<int>{0, 1});

  // m = 2 with atom order a < b: 0 < a < b < ab, checked pairwise below
  auto two = natural_orders_boolean(make_boolalg(2));
  REQUIRE(two.size() == 2);
  const FinStructure& nat = two[0];
  CHECK(nat.order == std::vector<int>{0, 1, 2, 3});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      if (x == y) continue;
      int diff = x ^ y;
      int top = 31 - __builtin_clz(diff);
      CHECK(nat.less(x, y) == bool((y >> top) & 1));
    }

  // all m! expansions pairwise isomorphic for m <= 4
  for (int m = 2; m <= 4; ++m) {
    auto all = natural_orders_boolean(make_boolalg(m));
    CHECK(long(all.size()) == oracle::factorial(m));
    std::set<std::string> canon;
    for (const auto& s : all) canon.insert(canonical_form(s).bytes);
    CHECK(canon.size() == 1);
  }
}

TEST_CASE("natural vector-space orders follow the highest-coordinate rule") {
  FinStructure f2 = make_vecspace(2, 2);
  FinStructure ordered = natural_order_vs(f2, {1, 2});  // e1 < e2
  // chain: 00 < 10 < 01 < 11 as packed codes 0,1,2,3
  CHECK(ordered.order == std::vector<int>{0, 1, 2, 3});

  FinStructure f3 = make_vecspace(1, 3);
  FinStructure o3 = natural_order_vs(f3, {1});
  CHECK(o3.order == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(natural_order_vs(f2, {1, 1}), Error);
  CHECK_THROWS_AS(natural_order_vs(f2, {0, 1}), Error);
}

TEST_CASE("normal ordering recognition") {
  FinStructure b2 = make_boolalg(2);
  OrderClassK nat = OrderClassK::natural(StructKind::BoolAlg);
  LinearOrder good = order_of(natural_orders_boolean(b2)[0]);
  CHECK(is_normal_ordering(b2, good, nat));

  // top below bottom: the two-element subalgebra carries a non-natural order
  LinearOrder bad;
  bad.rank = {3, 1, 2, 0};
  CHECK_FALSE(is_normal_ordering(b2, bad, nat));

  OrderClassK all = OrderClassK::all_orders(StructKind::Set);
  for (const auto& ord : all_linear_orders(3))
    CHECK(is_normal_ordering(make_set(3), ord, all));
}

TEST_CASE("normal-ordering spaces and the filter definition agree") {
  FinStructure b2 = make_boolalg(2);
  OrderClassK nat_ba = OrderClassK::natural(StructKind::BoolAlg);
  auto no2 = no_space(b2, nat_ba);
  CHECK(no2.size() == 2);
  CHECK(no2 == no_space_by_filter(b2, nat_ba));

  FinStructure b3 = make_boolalg(3);
  auto no3 = no_space(b3, nat_ba);
  CHECK(no3.size() == 6);
  CHECK(no3 == no_space_by_filter(b3, nat_ba));

  CHECK(no_space(make_set(3), OrderClassK::all_orders(StructKind::Set)).size() == 6);

  FinStructure f22 = make_vecspace(2, 2);
  OrderClassK nat_vs = OrderClassK::natural(StructKind::VecSpace);
  auto nov = no_space(f22, nat_vs);
  CHECK(nov.size() == 6);
  CHECK(nov == no_space_by_filter(f22, nat_vs));
}

TEST_CASE("normal-ordering spaces are closed under the automorphism action") {
  for (auto [s, k] : {std::pair{make_boolalg(2), OrderClassK::natural(StructKind::BoolAlg)},
                      std::pair{make_boolalg(3), OrderClassK::natural(StructKind::BoolAlg)},
                      std::pair{make_vecspace(2, 2), OrderClassK::natural(StructKind::VecSpace)}}) {
    auto no = no_space(s, k);
    std::set<LinearOrder> points(no.begin(), no.end());
    PermGroup aut = automorphism_group(s);
    for (const Perm& g : aut.elements())
      for (const auto& ord : no) CHECK(points.count(act_on_order(g, ord)) == 1);
  }
}

TEST_CASE("natural order restricted to the atoms reproduces the atom order") {
  for (int m = 2; m <= 4; ++m) {
    std::vector<int> atom_rank(m);
    std::iota(atom_rank.begin(), atom_rank.end(), 0);
    do {
      LinearOrder ord = natural_ba_order(m, atom_rank);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          if (a != b)
            CHECK((ord.rank[1 << a] < ord.rank[1 << b]) == (atom_rank[a] < atom_rank[b]));
    } while (std::next_permutation(atom_rank.begin(), atom_rank.end()));
  }
}

TEST_CASE("normality coincides with membership for hereditary classes") {
  // On the naturally ordered algebras (a hereditary class), an order is
  // normal exactly when the whole expansion is a member.
  OrderClassK nat = OrderClassK::natural(StructKind::BoolAlg);
  for (int m = 1; m <= 3; ++m) {
    FinStructure ba = make_boolalg(m);
    for (const auto& ord : all_linear_orders(ba.n)) {
      bool member = nat.member(with_order(ba, ord.rank));
      CHECK(is_normal_ordering(ba, ord, nat) == member);
    }
  }
}

TEST_CASE("order forgetfulness of the shipped classes") {
  // naturally ordered boolean algebras: forgetful at every checked size
  CHECK(check_order_forgetful(OrderClassK::natural(StructKind::BoolAlg), 3).forgetful);
  // chains over sets: one order type per size
  CHECK(check_order_forgetful(OrderClassK::all_orders(StructKind::Set), 4).forgetful);
  // ordered graphs: the 3-vertex path with two different vertex orders
  auto rep = check_order_forgetful(OrderClassK::all_orders(StructKind::Graph), 3);
  CHECK_FALSE(rep.forgetful);
  REQUIRE(rep.counterexample.has_value());
  const auto& [x, y] = *rep.counterexample;
  CHECK(canonical_form(reduct_of(x)).bytes == canonical_form(reduct_of(y)).bytes);
  CHECK(canonical_form(x).bytes != canonical_form(y).bytes);
  CHECK_FALSE(oracle::iso_by_bijections(x, y).has_value());
}

TEST_CASE("ordering property") {
  // order-forgetful class: B = A works (checked analog: naturally ordered BAs)
  OrderClassK nat_ba = OrderClassK::natural(StructKind::BoolAlg);
  auto b = check_ordering_property(nat_ba, make_boolalg(2), 3);
  REQUIRE(b.has_value());
  CHECK(b->atoms == 2);

  // all orders on sets: the same-size set
  OrderClassK sets = OrderClassK::all_orders(StructKind::Set);
  auto b2 = check_ordering_property(sets, make_set(2), 4);
  REQUIRE(b2.has_value());
  CHECK(b2->n == 2);

  // ordered graphs, edge plus isolated vertex: exhaustive scan up to 4
  OrderClassK og = OrderClassK::all_orders(StructKind::Graph);
  FinStructure a = make_graph(3, {{0, 1}});
  auto found = check_ordering_property(og, a, 4);
  // independent mini-brute-force over all graphs on <= 4 vertices
  {
    bool any_b_works = false;
    ClassDescriptor graphs = class_by_name("graph");
    auto a_orders = all_linear_orders(3);
    for (const auto& cand : enumerate_class(graphs, 4)) {
      bool all_pairs = true;
      for (const auto& oa : a_orders) {
        FinStructure ordered_a = with_order(a, oa.rank);
        for (const auto& ob : all_linear_orders(cand.n)) {
          FinStructure ordered_b = with_order(cand, ob.rank);
          bool any = false;
          std::vector<int> sel(ordered_a.n);
          std::function<bool(int, int)> rec = [&](int idx, int used_mask) {
            if (idx == ordered_a.n) return oracle::embedding_ok(ordered_a, ordered_b, sel);
            for (int v = 0; v < ordered_b.n; ++v) {
              if ((used_mask >> v) & 1) continue;
              sel[idx] = v;
              if (rec(idx + 1, used_mask | (1 << v))) return true;
            }
            return false;
          };
          any = rec(0, 0);
          if (!any) {
            all_pairs = false;
            break;
          }
        }
        if (!all_pairs) break;
      }
      if (all_pairs) {
        any_b_works = true;
        break;
      }
    }
    CHECK(any_b_works == found.has_value());
  }
}
