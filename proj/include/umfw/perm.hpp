#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "umfw/errors.hpp"

namespace umfw {

// One-line notation: p[i] is the image of point i.
using Perm = std::vector<int>;

Perm perm_identity(int n);
// (a * b)(x) = a(b(x)); apply b first.
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
bool is_permutation(const Perm& p);

// Finite permutation group: generators plus the enumerated closure.  Elements
// are materialized on first use and kept sorted in one-line lexicographic
// order, so element indices are stable across runs.  Index 0 is the identity.
// Caches are write-once behind a lock and shared between copies, so groups
// are safe to query concurrently.
class PermGroup {
 public:
  PermGroup() : degree_(0), box_(std::make_shared<CacheBox>()) {}
  static PermGroup from_generators(int degree, std::vector<Perm> gens);
  static PermGroup from_elements(int degree, std::vector<Perm> elems);
  static PermGroup trivial(int degree);
  static PermGroup symmetric(int n);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const;
  long order() const { return long(elements().size()); }

  bool contains(const Perm& p) const;
  // Index in the sorted element list; -1 when absent.
  int index_of(const Perm& p) const;
  bool is_subgroup_of(const PermGroup& g) const;

  // mul_table()[i][j] = index of elements()[i] * elements()[j].
  const std::vector<std::vector<int>>& mul_table() const;
  // inverse_table()[i] = index of elements()[i]^{-1}.
  const std::vector<int>& inverse_table() const;

 private:
  struct CacheBox {
    std::mutex m;
    std::vector<Perm> elems;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
  };
  int degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<CacheBox> box_;
};

}  // namespace umfw
