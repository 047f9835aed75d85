#include "umfw/ramsey.hpp"

#include <chrono>

#include <algorithm>
#include <map>
#include <set>

#include "umfw/canonical.hpp"

namespace umfw {

namespace {

uint64_t subset_mask(const std::vector<int>& xs) {
  uint64_t m = 0;
  for (int x : xs) m |= uint64_t{1} << x;
  return m;
}

struct ArrowInstance {
  CopySet copies_a;
  CopySet copies_b;
  // For each B-copy, the indices of the A-copies inside it.
  std::vector<std::vector<int>> sub_a;
  // For each A-copy, the indices of the B-copies through it.
  std::vector<std::vector<int>> in_b;
  bool has_vacuous_b = false;

  int num_a() const { return int(copies_a.copies.size()); }
  int num_b() const { return int(copies_b.copies.size()); }
};

ArrowInstance build_instance(const FinStructure& c, const FinStructure& b,
                             const FinStructure& a) {
  ArrowInstance inst;
  inst.copies_a = enumerate_copies(a, c);
  inst.copies_b = enumerate_copies(b, c);
  const int na = inst.num_a();
  const int nb = inst.num_b();
  std::vector<uint64_t> amask(na), bmask(nb);
  for (int i = 0; i < na; ++i) amask[i] = subset_mask(inst.copies_a.copies[i]);
  for (int j = 0; j < nb; ++j) bmask[j] = subset_mask(inst.copies_b.copies[j]);
  inst.sub_a.assign(nb, {});
  inst.in_b.assign(na, {});
  for (int j = 0; j < nb; ++j)
    for (int i = 0; i < na; ++i)
      if ((amask[i] & bmask[j]) == amask[i]) {
        inst.sub_a[j].push_back(i);
        inst.in_b[i].push_back(j);
      }
  for (int j = 0; j < nb; ++j)
    if (inst.sub_a[j].empty()) inst.has_vacuous_b = true;
  return inst;
}

// Automorphisms of C as permutations of the A-copy indices, deduplicated.
std::vector<std::vector<int>> copy_index_perms(const FinStructure& c, const CopySet& copies) {
  std::set<std::vector<int>> perms;
  const auto& list = copies.copies;
  std::map<std::vector<int>, int> index_of;
  for (size_t i = 0; i < list.size(); ++i) index_of[list[i]] = int(i);
  PermGroup aut = automorphism_group(c);
  for (const Perm& g : aut.elements()) {
    std::vector<int> pi(list.size());
    bool ok = true;
    for (size_t i = 0; i < list.size(); ++i) {
      std::vector<int> img;
      img.reserve(list[i].size());
      for (int x : list[i]) img.push_back(g[x]);
      std::sort(img.begin(), img.end());
      auto it = index_of.find(img);
      if (it == index_of.end()) {
        ok = false;  // images of copies are copies; guard anyway
        break;
      }
      pi[i] = it->second;
    }
    if (ok) perms.insert(pi);
  }
  std::vector<std::vector<int>> out;
  for (auto& p : perms)
    if (!std::is_sorted(p.begin(), p.end())) out.push_back(p);  // drop identity
  return out;
}

// Backtracking search for a coloring with no monochromatic B-copy.
struct BadColoringSearch {
  const ArrowInstance& inst;
  int k;
  long node_cap;
  double time_cap;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  long nodes = 0;
  long sym_prunes = 0;

  std::vector<int> color;      // -1 = unassigned
  std::vector<int> order;      // branching order over A-copy indices
  std::vector<int> cnt, first; // per B-copy assignment state
  std::vector<char> mixed;

  // symmetry machinery (only sound for the natural branching order)
  bool use_symmetry = false;
  bool color_canonical = false;
  std::vector<std::vector<int>> inv_perms;  // inverses of copy-index perms

  std::vector<int> found;

  BadColoringSearch(const ArrowInstance& in, int kk, const SearchBudget& budget)
      : inst(in), k(kk), node_cap(budget.node_cap), time_cap(budget.time_cap_secs) {
    color.assign(inst.num_a(), -1);
    cnt.assign(inst.num_b(), 0);
    first.assign(inst.num_b(), -1);
    mixed.assign(inst.num_b(), 0);
    order.resize(inst.num_a());
    for (int i = 0; i < inst.num_a(); ++i) order[i] = i;
  }

  // Apply color v to copy i; false when some B-copy became fully
  // monochromatic (the branch cannot lead to a bad coloring).
  bool assign(int i, int v, std::vector<int>& mixed_delta) {
    color[i] = v;
    bool ok = true;
    for (int j : inst.in_b[i]) {
      if (!mixed[j]) {
        if (cnt[j] == 0)
          first[j] = v;
        else if (first[j] != v) {
          mixed[j] = 1;
          mixed_delta.push_back(j);
        }
      }
      ++cnt[j];
      if (cnt[j] == int(inst.sub_a[j].size()) && !mixed[j]) ok = false;
    }
    return ok;
  }

  void unassign(int i, const std::vector<int>& mixed_delta) {
    for (int j : mixed_delta) mixed[j] = 0;
    for (int j : inst.in_b[i]) --cnt[j];
    color[i] = -1;
  }

  // Prune when some automorphism sends the current prefix to a smaller one
  // (after greedy color relabeling, matching the first-use branching rule).
  bool dominated(int depth) const {
    for (const auto& inv : inv_perms) {
      std::vector<int> relabel(k, -1);
      int used = 0;
      for (int s = 0; s <= depth; ++s) {
        int src = inv[s];
        if (src > depth) break;  // permuted value undefined; incomparable
        int x = color[src];
        if (relabel[x] < 0) relabel[x] = used++;
        int y = relabel[x];
        if (y < color[s]) return true;
        if (y > color[s]) break;
      }
    }
    return false;
  }

  bool dfs(int depth) {
    if (++nodes > node_cap) fail(err::ResourceCap, "coloring search exceeded the node budget");
    if ((nodes & 0xfff) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >
            time_cap)
      fail(err::ResourceCap, "coloring search exceeded the time budget");
    if (depth == inst.num_a()) {
      found = color;
      return true;
    }
    int i = order[depth];
    int vmax = k;
    if (color_canonical) {
      int used = 0;
      for (int t = 0; t < depth; ++t) used = std::max(used, color[order[t]] + 1);
      vmax = std::min(k, used + 1);
    }
    for (int v = 0; v < vmax; ++v) {
      std::vector<int> mixed_delta;
      bool viable = assign(i, v, mixed_delta);
      if (viable && use_symmetry && dominated(depth)) {
        viable = false;
        ++sym_prunes;
      }
      if (viable && dfs(depth + 1)) return true;
      unassign(i, mixed_delta);
    }
    return false;
  }
};

}  // namespace

std::optional<MonoCopy> find_monochromatic_copy(const FinStructure& c, const FinStructure& b,
                                                const FinStructure& a, const Coloring& coloring) {
  ArrowInstance inst = build_instance(c, b, a);
  if (!coloring.copyset || coloring.copyset->copies != inst.copies_a.copies ||
      int(coloring.colors.size()) != inst.num_a())
    fail(err::ShapeMismatch, "coloring does not match the copies of A in C");
  for (int v : coloring.colors)
    if (v < 0 || v >= coloring.k) fail(err::ShapeMismatch, "color value out of range");
  for (int j = 0; j < inst.num_b(); ++j) {
    if (inst.sub_a[j].empty()) return MonoCopy{inst.copies_b.copies[j], -1};
    int c0 = coloring.colors[inst.sub_a[j].front()];
    bool mono = true;
    for (int i : inst.sub_a[j])
      if (coloring.colors[i] != c0) {
        mono = false;
        break;
      }
    if (mono) return MonoCopy{inst.copies_b.copies[j], c0};
  }
  return std::nullopt;
}

bool certificate_revalidates(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                             const ArrowCertificate& cert) {
  if (cert.verdict == ArrowVerdict::Positive) return cert.complete;
  if (!cert.bad_coloring) return false;
  return !find_monochromatic_copy(c, b, a, *cert.bad_coloring).has_value();
}

ArrowCertificate arrow_holds(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                             int k, const SearchBudget& budget, bool reverse_branching) {
  if (k < 1) fail(err::PreconditionFailed, "color count must be at least 1");
  if (k > 8) fail(err::BoundTooLarge, "color count capped at 8");
  ArrowInstance inst = build_instance(c, b, a);
  if (inst.num_a() == 0)
    fail(err::PreconditionFailed, "no copies of A in C; the arrow is undefined");

  ArrowCertificate cert;
  cert.k = k;

  if (inst.has_vacuous_b) {
    // Some B-copy has no A-subcopy: every coloring is vacuously good.
    cert.verdict = ArrowVerdict::Positive;
    cert.stats.nodes = 0;
    return cert;
  }

  // Phase 1: existence of a bad coloring, with symmetry reduction.
  BadColoringSearch search(inst, k, budget);
  search.color_canonical = true;
  if (reverse_branching) {
    std::reverse(search.order.begin(), search.order.end());
    // lex-domination arguments assume prefix-ordered assignment
    search.use_symmetry = false;
  } else {
    auto perms = copy_index_perms(c, inst.copies_a);
    for (auto& p : perms) {
      std::vector<int> inv(p.size());
      for (size_t t = 0; t < p.size(); ++t) inv[p[t]] = int(t);
      search.inv_perms.push_back(inv);
    }
    search.use_symmetry = !search.inv_perms.empty();
  }
  bool bad_exists = search.dfs(0);
  cert.stats.nodes = search.nodes;
  cert.stats.symmetry_reductions = search.sym_prunes;

  if (!bad_exists) {
    cert.verdict = ArrowVerdict::Positive;
    cert.complete = true;
    return cert;
  }

  // Phase 2: the lexicographically least bad coloring via a plain
  // value-ascending search (first hit is the least).
  BadColoringSearch lexsearch(inst, k, budget);
  if (!lexsearch.dfs(0)) fail(err::CriteriaDisagree, "phases disagree on bad-coloring existence");
  cert.stats.nodes += lexsearch.nodes;
  cert.verdict = ArrowVerdict::Negative;
  Coloring bad;
  bad.copyset = std::make_shared<const CopySet>(inst.copies_a);
  bad.k = k;
  bad.colors = lexsearch.found;
  cert.bad_coloring = std::move(bad);
  if (!certificate_revalidates(c, b, a, cert))
    fail(err::CriteriaDisagree, "negative certificate failed revalidation");
  return cert;
}

std::optional<FinStructure> minimal_arrow_witness(const ClassDescriptor& kd, const FinStructure& b,
                                                  const FinStructure& a, int k, int bound,
                                                  const SearchBudget& budget) {
  if (!kd.contains(a) || !kd.contains(b))
    fail(err::MembershipError, "pattern structures must lie in the class");
  if (!embedding_exists(a, b))
    fail(err::PreconditionFailed, "A must embed in B");
  for (int size = 1; size <= std::min(bound, kd.size_cap); ++size) {
    for (const auto& cand : enumerate_class_exact(kd, size)) {
      if (enumerate_copies(a, cand).copies.empty()) continue;
      ArrowCertificate cert = arrow_holds(cand, b, a, k, budget);
      if (cert.verdict == ArrowVerdict::Positive) return cand;
    }
  }
  if (bound > kd.size_cap)
    fail(err::BoundTooLarge, "witness scan truncated by the class size cap");
  return std::nullopt;
}

}  // namespace umfw
