#include "umfw/orders_base.hpp"

#include <algorithm>

namespace umfw {

std::vector<int> chain_of(const LinearOrder& ord) {
  std::vector<int> chain(ord.rank.size());
  for (size_t e = 0; e < ord.rank.size(); ++e) chain[ord.rank[e]] = int(e);
  return chain;
}

LinearOrder order_from_chain(const std::vector<int>& chain) {
  LinearOrder ord;
  ord.rank.assign(chain.size(), 0);
  for (size_t pos = 0; pos < chain.size(); ++pos) ord.rank[chain[pos]] = int(pos);
  return ord;
}

LinearOrder natural_ba_order(int atoms, const std::vector<int>& atom_rank) {
  // rank(x) = sum over atoms a in x of 2^{atom_rank[a]}; this realizes the
  // "top atom of the symmetric difference decides" rule.
  int n = 1 << atoms;
  LinearOrder ord;
  ord.rank.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    int r = 0;
    for (int a = 0; a < atoms; ++a)
      if ((x >> a) & 1) r |= 1 << atom_rank[a];
    ord.rank[x] = r;
  }
  return ord;
}

LinearOrder natural_vs_order(const FinStructure& space, const std::vector<int>& ordered_basis) {
  if (int(ordered_basis.size()) != space.dim)
    fail(err::NotABasis, "ordered basis must have dim elements");
  // Independence check while computing all coordinates: rank(x) is the base-p
  // value of x's coordinates in the given basis, highest index most
  // significant.
  std::vector<int> rank(space.n, -1);
  rank[0] = 0;
  std::vector<int> span = {0};
  for (int i = 0; i < space.dim; ++i) {
    int b = ordered_basis[i];
    if (b <= 0 || b >= space.n || rank[b] >= 0)
      fail(err::NotABasis, "vectors are linearly dependent");
    size_t n0 = span.size();
    for (size_t s = 0; s < n0; ++s)
      for (int coef = 1; coef < space.p; ++coef) {
        int y = vs_add(space, span[s], vs_scale(space, coef, b));
        if (rank[y] >= 0) fail(err::NotABasis, "vectors are linearly dependent");
        // coordinate coef at index i contributes coef * p^i
        int contrib = coef;
        for (int t = 0; t < i; ++t) contrib *= space.p;
        rank[y] = rank[span[s]] + contrib;
        span.push_back(y);
      }
  }
  LinearOrder ord;
  ord.rank = rank;
  return ord;
}

LinearOrder order_of(const FinStructure& s) {
  if (!kind_is_ordered(s.kind))
    fail(err::InvalidDescriptor, "structure carries no order");
  LinearOrder ord;
  ord.rank = s.order;
  return ord;
}

bool is_natural_ba_order(const FinStructure& ba, const LinearOrder& ord) {
  if (int(ord.rank.size()) != ba.n) return false;
  auto chain = chain_of(ord);
  // Candidate atom ranking: atom a gets the rank induced by the chain.
  std::vector<std::pair<int, int>> atoms_by_rank;
  for (int a = 0; a < ba.atoms; ++a) atoms_by_rank.push_back({ord.rank[1 << a], a});
  std::sort(atoms_by_rank.begin(), atoms_by_rank.end());
  std::vector<int> atom_rank(ba.atoms);
  for (int r = 0; r < ba.atoms; ++r) atom_rank[atoms_by_rank[r].second] = r;
  return natural_ba_order(ba.atoms, atom_rank) == ord;
}

bool is_natural_vs_order(const FinStructure& vs, const LinearOrder& ord) {
  if (int(ord.rank.size()) != vs.n) return false;
  auto chain = chain_of(ord);
  // In a natural order the i-th basis vector sits at chain position p^i.
  std::vector<int> basis;
  long pos = 1;
  for (int i = 0; i < vs.dim; ++i) {
    if (pos >= vs.n) return false;
    basis.push_back(chain[pos]);
    pos *= vs.p;
  }
  try {
    return natural_vs_order(vs, basis) == ord;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace umfw
