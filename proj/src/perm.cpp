#include "umfw/perm.hpp"

#include <algorithm>
#include <set>

namespace umfw {

Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = int(i);
  return r;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= int(p.size()) || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> gens) {
  PermGroup g;
  g.degree_ = degree;
  for (const Perm& p : gens) {
    if (int(p.size()) != degree || !is_permutation(p))
      fail(err::InvalidDescriptor, "generator is not a permutation of the stated degree");
  }
  g.gens_ = std::move(gens);
  return g;
}

PermGroup PermGroup::from_elements(int degree, std::vector<Perm> elems) {
  PermGroup g = from_generators(degree, std::move(elems));
  g.elements();  // force closure; validates the element list is a group
  return g;
}

PermGroup PermGroup::trivial(int degree) {
  return from_generators(degree, {perm_identity(degree)});
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm t = perm_identity(n);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    Perm c(n);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  if (gens.empty()) gens.push_back(perm_identity(n));
  return from_generators(n, std::move(gens));
}

const std::vector<Perm>& PermGroup::elements() const {
  std::lock_guard<std::mutex> lock(box_->m);
  if (!box_->elems.empty()) return box_->elems;
  std::set<Perm> closed;
  std::vector<Perm> frontier;
  closed.insert(perm_identity(degree_));
  frontier.push_back(perm_identity(degree_));
  while (!frontier.empty()) {
    Perm cur = frontier.back();
    frontier.pop_back();
    for (const Perm& g : gens_) {
      Perm nxt = perm_compose(g, cur);
      if (closed.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  box_->elems.assign(closed.begin(), closed.end());  // std::set iterates in lex order
  return box_->elems;
}

bool PermGroup::contains(const Perm& p) const {
  return index_of(p) >= 0;
}

int PermGroup::index_of(const Perm& p) const {
  const auto& e = elements();
  auto it = std::lower_bound(e.begin(), e.end(), p);
  if (it != e.end() && *it == p) return int(it - e.begin());
  return -1;
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  if (degree_ != g.degree()) return false;
  for (const Perm& p : elements())
    if (!g.contains(p)) return false;
  return true;
}

namespace {

int sorted_index_of(const std::vector<Perm>& e, const Perm& p) {
  auto it = std::lower_bound(e.begin(), e.end(), p);
  if (it != e.end() && *it == p) return int(it - e.begin());
  return -1;
}

}  // namespace

const std::vector<std::vector<int>>& PermGroup::mul_table() const {
  const auto& e = elements();  // materialize before taking the lock
  std::lock_guard<std::mutex> lock(box_->m);
  if (!box_->mul.empty()) return box_->mul;
  const int n = int(e.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int idx = sorted_index_of(e, perm_compose(e[i], e[j]));
      if (idx < 0) fail(err::InvalidDescriptor, "element list is not closed under composition");
      mul[i][j] = idx;
    }
  box_->mul = std::move(mul);
  return box_->mul;
}

const std::vector<int>& PermGroup::inverse_table() const {
  const auto& e = elements();
  std::lock_guard<std::mutex> lock(box_->m);
  if (!box_->inv.empty()) return box_->inv;
  std::vector<int> inv(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    int idx = sorted_index_of(e, perm_inverse(e[i]));
    if (idx < 0) fail(err::InvalidDescriptor, "element list is not closed under inversion");
    inv[i] = idx;
  }
  box_->inv = std::move(inv);
  return box_->inv;
}

}  // namespace umfw
